#include "pottslab/bivar_poly.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pottslab {

namespace {

void check_exponents(int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
}

template <typename F>
F to_field(const BigInt& c) {
    return F(c.convert_to<double>());
}

// Horner in the first variable over inner Horner polynomials in the second;
// terms() is sorted lexicographically on (i, j), so reverse iteration walks
// descending (i, j).
template <typename F>
F horner_eval(const BivarPoly& p, F x0, F y0) {
    const auto& terms = p.terms();
    if (terms.empty()) return F{};
    F result{};
    int outer_i = 0;
    bool started = false;
    auto it = terms.rbegin();
    while (it != terms.rend()) {
        const int i = it->first.first;
        F inner{};
        int prev_j = -1;
        while (it != terms.rend() && it->first.first == i) {
            const int j = it->first.second;
            if (prev_j < 0) {
                inner = to_field<F>(it->second);
            } else {
                for (int s = 0; s < prev_j - j; ++s) inner *= y0;
                inner += to_field<F>(it->second);
            }
            prev_j = j;
            ++it;
        }
        for (int s = 0; s < prev_j; ++s) inner *= y0;
        if (!started) {
            result = inner;
            started = true;
        } else {
            for (int s = 0; s < outer_i - i; ++s) result *= x0;
            result += inner;
        }
        outer_i = i;
    }
    for (int s = 0; s < outer_i; ++s) result *= x0;
    return result;
}

}  // namespace

BivarPoly BivarPoly::constant(Vars vars, BigInt c) {
    BivarPoly p(std::move(vars));
    p.set_term(0, 0, std::move(c));
    return p;
}

BivarPoly BivarPoly::variable(Vars vars, int index) {
    if (index != 0 && index != 1) throw std::invalid_argument("variable index must be 0 or 1");
    BivarPoly p(std::move(vars));
    p.set_term(index == 0 ? 1 : 0, index == 1 ? 1 : 0, 1);
    return p;
}

BivarPoly BivarPoly::monomial(Vars vars, int i, int j, BigInt c) {
    check_exponents(i, j);
    BivarPoly p(std::move(vars));
    p.set_term(i, j, std::move(c));
    return p;
}

void BivarPoly::set_term(int i, int j, BigInt c) {
    if (c == 0) return;
    terms_[{i, j}] = std::move(c);
}

void BivarPoly::check_compatible(const BivarPoly& r) const {
    if (vars_ != r.vars_) throw std::invalid_argument("variable-label mismatch");
}

int BivarPoly::degree(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, var == 0 ? e.first : e.second);
    return d;
}

int BivarPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
}

BigInt BivarPoly::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? BigInt(0) : it->second;
}

BivarPoly BivarPoly::operator+(const BivarPoly& r) const {
    check_compatible(r);
    BivarPoly out(vars_);
    out.terms_ = terms_;
    for (const auto& [e, c] : r.terms_) {
        auto [it, inserted] = out.terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    return out;
}

BivarPoly BivarPoly::operator-() const {
    BivarPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

BivarPoly BivarPoly::operator-(const BivarPoly& r) const { return *this + (-r); }

BivarPoly BivarPoly::operator*(const BivarPoly& r) const {
    check_compatible(r);
    BivarPoly out(vars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : r.terms_) {
            Exponents e{e1.first + e2.first, e1.second + e2.second};
            auto [it, inserted] = out.terms_.emplace(e, c1 * c2);
            if (!inserted) {
                it->second += c1 * c2;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    return out;
}

BivarPoly BivarPoly::scale(const BigInt& c) const {
    BivarPoly out(vars_);
    if (c == 0) return out;
    for (const auto& [e, coef] : terms_) out.terms_.emplace(e, coef * c);
    return out;
}

BivarPoly BivarPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    BivarPoly result = constant(vars_, 1);
    BivarPoly base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

BivarPoly BivarPoly::substitute(int var, const BivarPoly& s) const {
    check_compatible(s);
    if (var != 0 && var != 1) throw std::invalid_argument("variable index must be 0 or 1");
    BivarPoly out(vars_);
    // cache powers of s up to the needed degree
    std::vector<BivarPoly> powers{constant(vars_, 1)};
    auto power = [&](int k) -> const BivarPoly& {
        while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * s);
        return powers[k];
    };
    for (const auto& [e, c] : terms_) {
        int sub_exp = var == 0 ? e.first : e.second;
        int keep_i = var == 0 ? 0 : e.first;
        int keep_j = var == 0 ? e.second : 0;
        out += power(sub_exp) * monomial(vars_, keep_i, keep_j, c);
    }
    return out;
}

double BivarPoly::eval_real(double x0, double y0) const {
    return horner_eval<double>(*this, x0, y0);
}

std::complex<double> BivarPoly::eval_complex(std::complex<double> x0,
                                             std::complex<double> y0) const {
    return horner_eval<std::complex<double>>(*this, x0, y0);
}

BigRat BivarPoly::eval_exact(const BigRat& x0, const BigRat& y0) const {
    BigRat result = 0;
    for (const auto& [e, c] : terms_) {
        BigRat term = BigRat(c);
        for (int k = 0; k < e.first; ++k) term *= x0;
        for (int k = 0; k < e.second; ++k) term *= y0;
        result += term;
    }
    return result;
}

BivarPoly BivarPoly::partial(int var) const {
    if (var != 0 && var != 1) throw std::invalid_argument("variable index must be 0 or 1");
    BivarPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        auto [i, j] = e;
        if (var == 0 && i > 0) out.set_term(i - 1, j, c * i);
        if (var == 1 && j > 0) out.set_term(i, j - 1, c * j);
    }
    return out;
}

std::vector<BigInt> BivarPoly::univariate(int fixed_var, const BigInt& value) const {
    const int free_var = fixed_var == 0 ? 1 : 0;
    std::vector<BigInt> coeffs(static_cast<size_t>(std::max(0, degree(free_var)) + 1), BigInt(0));
    if (is_zero()) return {BigInt(0)};
    for (const auto& [e, c] : terms_) {
        int fixed_exp = fixed_var == 0 ? e.first : e.second;
        int free_exp = fixed_var == 0 ? e.second : e.first;
        BigInt term = c;
        for (int k = 0; k < fixed_exp; ++k) term *= value;
        coeffs[static_cast<size_t>(free_exp)] += term;
    }
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

std::vector<std::complex<double>> BivarPoly::univariate(int fixed_var,
                                                        std::complex<double> value) const {
    const int free_var = fixed_var == 0 ? 1 : 0;
    std::vector<std::complex<double>> coeffs(
        static_cast<size_t>(std::max(0, degree(free_var)) + 1));
    if (is_zero()) return {std::complex<double>(0.0)};
    for (const auto& [e, c] : terms_) {
        int fixed_exp = fixed_var == 0 ? e.first : e.second;
        int free_exp = fixed_var == 0 ? e.second : e.first;
        std::complex<double> term = c.convert_to<double>();
        for (int k = 0; k < fixed_exp; ++k) term *= value;
        coeffs[static_cast<size_t>(free_exp)] += term;
    }
    return coeffs;
}

std::string BivarPoly::to_json() const {
    nlohmann::ordered_json j;
    j["vars"] = {vars_[0], vars_[1]};
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [e, c] : terms_) {
        nlohmann::ordered_json t;
        t["e"] = {e.first, e.second};
        t["c"] = c.str();
        j["terms"].push_back(std::move(t));
    }
    return j.dump();
}

BivarPoly BivarPoly::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BivarPoly p(Vars{j.at("vars").at(0).get<std::string>(), j.at("vars").at(1).get<std::string>()});
    for (const auto& t : j.at("terms")) {
        int i = t.at("e").at(0).get<int>();
        int jj = t.at("e").at(1).get<int>();
        check_exponents(i, jj);
        BigInt c(t.at("c").get<std::string>());
        if (c == 0) continue;
        auto [it, inserted] = p.terms_.emplace(Exponents{i, jj}, std::move(c));
        if (!inserted) throw std::invalid_argument("duplicate term in polynomial JSON");
    }
    return p;
}

std::string BivarPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // highest total degree first reads more naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << '-';
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool has_var = e.first > 0 || e.second > 0;
        if (mag != 1 || !has_var) out << mag.str();
        if (e.first > 0) {
            out << vars_[0];
            if (e.first > 1) out << '^' << e.first;
        }
        if (e.second > 0) {
            out << vars_[1];
            if (e.second > 1) out << '^' << e.second;
        }
    }
    return out.str();
}

}  // namespace pottslab
