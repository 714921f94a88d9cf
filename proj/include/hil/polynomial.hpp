#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hil/errors.hpp"

namespace hil::poly {

/// Coefficient vectors, index k multiplies z^k.
using Coeffs = std::vector<cplx>;

cplx eval(std::span<const cplx> p, cplx z) noexcept;
Coeffs add(std::span<const cplx> p, std::span<const cplx> q);
Coeffs sub(std::span<const cplx> p, std::span<const cplx> q);
Coeffs mul(std::span<const cplx> p, std::span<const cplx> q);
Coeffs scale(std::span<const cplx> p, cplx c);
Coeffs power(std::span<const cplx> p, std::size_t n);
Coeffs derivative(std::span<const cplx> p);

/// Drops trailing coefficients with modulus <= tol * max modulus.
Coeffs trimmed(Coeffs p, double tol = 0.0);
std::size_t degree(std::span<const cplx> p) noexcept;

/// Divides p by (z - root) m times; returns quotient and the largest remainder seen.
struct Deflation {
    Coeffs quotient;
    double remainder = 0.0;
};
Deflation deflate(std::span<const cplx> p, cplx root, std::size_t times = 1);

/// Roots with multiplicity via companion-matrix eigenvalues and Newton polishing.
/// Roots closer than cluster_radius are merged.
struct Root {
    cplx value;
    std::size_t multiplicity = 1;
};
std::vector<Root> roots(std::span<const cplx> p, double cluster_radius = 1e-7);

/// Rational function num/den.
struct Rational {
    Coeffs num{cplx{0.0}};
    Coeffs den{cplx{1.0}};

    cplx operator()(cplx z) const noexcept { return eval(num, z) / eval(den, z); }
    std::size_t degree() const noexcept;
};

/// f∘g for rational f, g by homogeneous substitution.
Rational compose(const Rational& f, const Rational& g);

}  // namespace hil::poly
