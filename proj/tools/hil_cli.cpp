#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "hil/report.hpp"

namespace {

constexpr int kExitInvalid = 2;

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

/// Job text from --input, --job FILE, or standard input when neither is given.
std::string job_text(const std::string& input, const std::string& path) {
    if (!input.empty()) return input;
    if (!path.empty() && path != "-") {
        std::ifstream f(path);
        if (!f) throw hil::InvalidInput("cannot open job file " + path);
        return read_all(f);
    }
    return read_all(std::cin);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant subspace checks for composition operators on Hardy spaces"};
    app.require_subcommand(1);

    std::string input, job_path, out_path, format = "json", grid;
    std::size_t order = 0, angles = 0;
    double tol_eq = 0.0, tol_sup = -1.0;
    bool timing = false;
    app.add_option("--order", order, "Series truncation order");
    app.add_option("--grid", grid, "Comma separated radii of the sampling grid");
    app.add_option("--angles", angles, "Angular samples per circle");
    app.add_option("--tol-eq", tol_eq, "Equality tolerance for membership identities");
    app.add_option("--tol-sup", tol_sup, "Slack for sup-norm bounds");
    app.add_option("--out", out_path, "Write the report to this file instead of stdout");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--timing", timing, "Record wall time in the provenance block");

    for (const char* name : hil::kCommands) {
        auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " command on a JSON job");
        sub->add_option("--input,-i", input, "Job as an inline JSON string");
        sub->add_option("--job,-j", job_path, "Job file ('-' reads stdin)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    hil::json job;
    try {
        job = hil::json::parse(job_text(input, job_path));
    } catch (const std::exception& e) {
        std::cerr << "invalid job: " << e.what() << "\n";
        return kExitInvalid;
    }
    if (job.is_object()) {
        hil::json& trunc = job["truncation"];
        if (trunc.is_null()) trunc = hil::json::object();
        if (order > 0) trunc["order"] = order;
        if (angles > 0) trunc["angles"] = angles;
        if (tol_eq > 0.0) trunc["tol_eq"] = tol_eq;
        if (tol_sup >= 0.0) trunc["tol_sup"] = tol_sup;
        if (!grid.empty()) {
            hil::json radii = hil::json::array();
            std::stringstream ss(grid);
            std::string item;
            try {
                while (std::getline(ss, item, ',')) radii.push_back(std::stod(item));
            } catch (const std::exception&) {
                std::cerr << "invalid --grid value '" << grid << "'\n";
                return kExitInvalid;
            }
            trunc["grid"] = radii;
        }
        if (trunc.empty()) job.erase("truncation");
    }

    const hil::JobResult result = hil::run_job(command, job, hil::Settings::from_environment(), timing);
    std::string text;
    if (format == "csv" && !result.report.contains("error")) {
        try {
            text = hil::report_to_csv(result.report);
        } catch (const hil::Error& e) {
            std::cerr << e.what() << "\n";
            return kExitInvalid;
        }
    } else {
        text = result.report.dump(2) + "\n";
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitInvalid;
        }
        f << text;
    }
    if (result.report.contains("error")) std::cerr << result.report["error"]["message"].get<std::string>() << "\n";
    return result.exit_code;
}
