#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hil/disk_map.hpp"
#include "hil/inner.hpp"
#include "hil/norms.hpp"
#include "hil/verdict.hpp"

namespace hil {

/// One of the operator families known to lie in the Deddens algebra of C_φ
/// when φ(0) = 0: C_φ itself, a multiplier M_h with polynomial symbol h, and the
/// antiderivative V f(z) = ∫_0^z f.
struct DeddensGenerator {
    enum class Kind { composition, multiplication, antiderivative };

    Kind kind = Kind::composition;
    std::vector<cplx> h;   // multiplier coefficients, used when kind == multiplication

    static DeddensGenerator composition() { return {Kind::composition, {}}; }
    static DeddensGenerator multiplication(std::vector<cplx> h);
    static DeddensGenerator antiderivative() { return {Kind::antiderivative, {}}; }

    /// "C_phi", "M_h" or "V".
    std::string id() const;

    /// T f as a series truncated at order (exact low-order coefficients).
    TaylorSeries apply(const TaylorSeries& f, const DiskSelfMap& phi, std::size_t order) const;
};

/// Ratios r_n = ‖C_φ^n T f‖ / ‖C_φ^n f‖ for n = 1..n_max per battery function.
struct DeddensProbeResult {
    std::string operator_id;
    std::vector<std::vector<double>> ratios;   // one row per battery function
    double sup_ratio = 0.0;
    Outcome bounded_verdict = Outcome::inconclusive;
    std::size_t n_max_requested = 0;
    std::size_t n_max_used = 0;
    /// Largest coefficient gap of the intertwining identity (antiderivative certificate only).
    std::optional<double> intertwining_residual;
    std::vector<std::string> notes;
};

/// Norms are boundary means of |·|^p on the unit circle computed in log space.
/// The verdict holds when the running maximum of the ratios grows by less than
/// 1e-6 (relative) over the last n_max/4 steps. n_max is reduced and reported if a norm underflows.
/// Throws HypothesisViolated unless |φ(0)| <= 1e-12, InvalidInput for a zero battery
/// function, and Underflow when even n = 1 cannot be evaluated.
DeddensProbeResult deddens_ratio_probe(const DeddensGenerator& T, const DiskSelfMap& phi,
                                       const std::vector<TaylorSeries>& battery, std::size_t n_max,
                                       const HardyExponent& p, const Settings& settings = {});

/// Checks C_φ^n V f = V(φ_n' · (f∘φ_n)) coefficientwise (within 1e-8 relative to the
/// coefficient scale) on a random battery of degree <= 12 for n <= n_max, then reports
/// the ratios ‖V M_{φ_n'} g‖ / ‖g‖ and their maximum as the empirical bound M.
/// Throws HypothesisViolated unless φ(0) = 0.
DeddensProbeResult certify_antiderivative(const DiskSelfMap& phi, std::size_t n_max, const HardyExponent& p,
                                          const Settings& settings = {});

/// Witness that θH^p is not invariant for the Deddens algebra when θ has a zero
/// α ≠ 0: the first n <= 8 with |∫_0^α θ(w) w^n dw| > 1e-10, confirmed by
/// member_theta_Hp rejecting V(θ z^n). The verdict holds when a witness is found.
/// Throws HypothesisViolated without a nonzero zero or with φ(0) ≠ 0, and
/// Inconclusive when every moment vanishes.
Verdict zero_moment_probe(const InnerFunction& theta, const DiskSelfMap& phi, const Settings& settings = {});

/// Exhibits V(S z^{n+m}) ∉ S z^n H^p for some m <= 4 when S has a singular atom.
/// The direct leg samples |V(S z^{n+m}) / (S z^n)| along the radius towards each atom.
/// The verdict holds when failure is exhibited. Throws HypothesisViolated for a
/// constant S or an unsuitable φ, and Inconclusive when the grid cannot resolve the atom.
Verdict singular_atom_probe(const InnerFunction& S, std::size_t n, const DiskSelfMap& phi, const Settings& settings = {});

/// Geometric collapse behind the z^n H^p lattice: with δ = sup|φ| < 1,
/// R_n = mean |φ_n|^{mp}, K_n = mean |φ_n|^{kp} and L_n = mean |φ_n|^{kp} |f∘φ_n|^p on
/// the unit circle, checks R_n <= δ^{(m-k)np} K_n (1 + 1e-3) for every n, that
/// L_n >= (|f(0)|^p / 2) K_n over the last quarter of n, and fits the decay exponent
/// of R_n / L_n. Throws HypothesisViolated when δ >= 1, φ(0) ≠ 0, m <= k or f(0) = 0.
Verdict lattice_decay(const DiskSelfMap& phi, std::size_t m, std::size_t k, const TaylorSeries& f,
                        const HardyExponent& p, std::size_t n_max, const Settings& settings = {});

struct LatticeScanResult {
    std::vector<std::size_t> n_values;
    std::vector<bool> survived;
    std::vector<double> max_leakage;
    std::vector<std::string> witnesses;   // empty string when z^n H^p survived

    bool all_survived() const noexcept;
};

/// For n = 0..N_max pushes z^n·{1, z, ..., z^8} through every word of length <= 3
/// in C_φ, M_h (four sample symbols) and V, recording the largest of the first n
/// coefficients of each image. z^n H^p survives when that leakage is <= 1e-9.
/// Throws HypothesisViolated unless φ is strict with φ(0) = 0.
LatticeScanResult lattice_scan(const DiskSelfMap& phi, std::size_t N_max, const Settings& settings = {});

/// The four multiplier symbols used by lattice_scan.
std::vector<std::vector<cplx>> lattice_multipliers();

}  // namespace hil
