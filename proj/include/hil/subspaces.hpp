#pragma once

#include <optional>
#include <string>

#include "hil/analytic.hpp"
#include "hil/inner.hpp"
#include "hil/verdict.hpp"

namespace hil {

/// (α, β) with |α|² + |β|² = 1 and α ≠ 0; H^p_{α,β} is spanned by α + βz, z², z³, ...
class AdmissiblePair {
public:
    /// Throws InvalidInput unless |α|² + |β|² = 1 within 1e-12 and α ≠ 0.
    AdmissiblePair(cplx alpha, cplx beta);
    /// Scales (α, β) onto the unit sphere first.
    static AdmissiblePair normalized(cplx alpha, cplx beta);

    cplx alpha() const noexcept { return alpha_; }
    cplx beta() const noexcept { return beta_; }

private:
    cplx alpha_;
    cplx beta_;
};

enum class SubspaceKind { Hab, J_Hab, zn_Hp, theta_Hp, H2_a };

const char* to_string(SubspaceKind k) noexcept;

/// One of the subspace families. Only the fields of the chosen kind are meaningful.
struct SubspaceSpec {
    SubspaceKind kind = SubspaceKind::Hab;
    std::optional<AdmissiblePair> pair;
    std::optional<InnerFunction> inner;
    std::size_t n = 0;
    cplx point{};

    static SubspaceSpec hab(AdmissiblePair pair);
    static SubspaceSpec j_hab(InnerFunction J, AdmissiblePair pair);
    static SubspaceSpec zn(std::size_t n);
    static SubspaceSpec theta(InnerFunction theta);
    static SubspaceSpec vanishing_at(cplx a);

    std::string describe() const;
};

/// f(0)β = f'(0)α within 1e-9 (1 + |f(0)| + |f'(0)|).
Verdict member_Hab(const TaylorSeries& f, const AdmissiblePair& pair, const Settings& settings = {});

/// Origin jet identity α J_n f_{n+1} = (β J_n + α J_{n+1}) f_n with f_k = 0 for k < n,
/// where n is the multiplicity of J at 0 and subscripts are Taylor coefficients.
/// Also requires f to vanish at every other zero of J to the same order.
Verdict member_J_Hab(const TaylorSeries& f, const InnerFunction& J, const AdmissiblePair& pair,
                     const Settings& settings = {});
/// Same test with the origin coefficients taken from the function's jet.
Verdict member_J_Hab(const AnalyticFunction& f, const InnerFunction& J, const AdmissiblePair& pair,
                     const Settings& settings = {});

/// f_k = 0 for k < n.
Verdict member_zn(const TaylorSeries& f, std::size_t n, const Settings& settings = {});

/// f(a) = 0.
Verdict member_vanishing_at(const TaylorSeries& f, cplx a, const Settings& settings = {});

/// Zero divisibility by θ plus a boundedness probe of f/θ.
Verdict member_theta_Hp(const AnalyticFunction& f, const InnerFunction& theta, double p = 2.0,
                        const Settings& settings = {});
Verdict member_theta_Hp(const TaylorSeries& f, const InnerFunction& theta, double p = 2.0,
                        const Settings& settings = {});

/// Dispatches on the subspace kind.
Verdict member(const TaylorSeries& f, const SubspaceSpec& spec, double p = 2.0, const Settings& settings = {});

/// β J_n + α J_{n+1} = 0, the condition under which J H^p_{α,β} = z^n H^p_{1,0};
/// cross-checked on 8 battery functions when it holds.
Verdict hab_collapse(const InnerFunction& J, const AdmissiblePair& pair, const Settings& settings = {});

}  // namespace hil
