#ifndef POTTSLAB_BIVAR_POLY_HPP
#define POTTSLAB_BIVAR_POLY_HPP

#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pottslab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Sparse polynomial in up to two named variables with exact integer
/// coefficients. The term map is the unique normal form: no zero
/// coefficients are ever stored, so equality is map equality. Coefficients
/// are converted to floating point only at evaluation boundaries.
class BivarPoly {
public:
    using Vars = std::array<std::string, 2>;
    using Exponents = std::pair<int, int>;
    using TermMap = std::map<Exponents, BigInt>;  // lexicographic on (i, j)

    BivarPoly() : vars_{"x", "y"} {}
    explicit BivarPoly(Vars vars) : vars_(std::move(vars)) {}

    static BivarPoly constant(Vars vars, BigInt c);
    static BivarPoly variable(Vars vars, int index);  // index 0 or 1
    static BivarPoly monomial(Vars vars, int i, int j, BigInt c);

    const Vars& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree(int var) const;  // -1 for the zero polynomial
    int total_degree() const;
    BigInt coeff(int i, int j) const;

    BivarPoly operator+(const BivarPoly& r) const;
    BivarPoly operator-(const BivarPoly& r) const;
    BivarPoly operator-() const;
    BivarPoly operator*(const BivarPoly& r) const;
    BivarPoly& operator+=(const BivarPoly& r) { return *this = *this + r; }
    BivarPoly& operator*=(const BivarPoly& r) { return *this = *this * r; }
    bool operator==(const BivarPoly&) const = default;

    BivarPoly scale(const BigInt& c) const;
    BivarPoly pow(int k) const;

    /// Exact composition: replace the given variable by s (same labels).
    BivarPoly substitute(int var, const BivarPoly& s) const;

    double eval_real(double x0, double y0) const;
    std::complex<double> eval_complex(std::complex<double> x0, std::complex<double> y0) const;
    BigRat eval_exact(const BigRat& x0, const BigRat& y0) const;

    /// Exact formal partial derivative.
    BivarPoly partial(int var) const;

    /// Dense ascending coefficient list in the remaining variable after
    /// fixing `fixed_var` to the given value.
    std::vector<BigInt> univariate(int fixed_var, const BigInt& value) const;
    std::vector<std::complex<double>> univariate(int fixed_var,
                                                 std::complex<double> value) const;

    /// JSON polynomial schema:
    ///   {"vars":["x","y"],"terms":[{"e":[i,j],"c":"<decimal>"}]}
    /// terms in lexicographic (i, j) order, coefficients as decimal strings.
    std::string to_json() const;
    static BivarPoly from_json(const std::string& text);

    std::string to_string() const;

private:
    void set_term(int i, int j, BigInt c);
    void check_compatible(const BivarPoly& r) const;

    Vars vars_;
    TermMap terms_;
};

inline BivarPoly add(const BivarPoly& p, const BivarPoly& r) { return p + r; }
inline BivarPoly mul(const BivarPoly& p, const BivarPoly& r) { return p * r; }
inline BivarPoly scale(const BivarPoly& p, const BigInt& c) { return p.scale(c); }

}  // namespace pottslab

#endif
