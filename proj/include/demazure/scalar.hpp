#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "demazure/errors.hpp"
#include "demazure/rational.hpp"

namespace demazure {

// The four named parameters of the coefficient ring.
enum class Param : int { mu1 = 0, mu2 = 1, t = 2, u = 3 };

inline const char* param_name(Param p)
{
    switch (p) {
    case Param::mu1: return "mu1";
    case Param::mu2: return "mu2";
    case Param::t: return "t";
    case Param::u: return "u";
    }
    return "?";
}

// Exponent vector of one monomial in (mu1, mu2, t, u).  mu1 and mu2 carry
// nonnegative exponents; t and u are Laurent (t comes Laurent from the Hecke
// algebra, u from inverting the Theorem's unit u).
struct ParamExp {
    int32_t mu1 = 0;
    int32_t mu2 = 0;
    int32_t t = 0;
    int32_t u = 0;

    friend auto operator<=>(const ParamExp&, const ParamExp&) = default;

    ParamExp operator+(const ParamExp& o) const
    {
        return ParamExp{mu1 + o.mu1, mu2 + o.mu2, t + o.t, u + o.u};
    }
    int32_t get(Param p) const
    {
        switch (p) {
        case Param::mu1: return mu1;
        case Param::mu2: return mu2;
        case Param::t: return t;
        case Param::u: return u;
        }
        return 0;
    }
    void set(Param p, int32_t v)
    {
        switch (p) {
        case Param::mu1: mu1 = v; break;
        case Param::mu2: mu2 = v; break;
        case Param::t: t = v; break;
        case Param::u: u = v; break;
        }
    }
    bool is_constant() const { return mu1 == 0 && mu2 == 0 && t == 0 && u == 0; }
};

// Element of Q[mu1, mu2][t, t^-1, u, u^-1] in canonical form: terms sorted by
// exponent key, reduced rationals, no zero coefficients stored.
class Scalar {
public:
    using Term = std::pair<ParamExp, Rational>;
    using TermList = std::vector<Term>;

    Scalar() = default;
    Scalar(int v)
    {
        if (v != 0) terms_.emplace_back(ParamExp{}, v);
    }
    Scalar(const Rational& v)
    {
        if (v != 0) terms_.emplace_back(ParamExp{}, v);
    }

    static Scalar monomial(const Rational& c, ParamExp e)
    {
        Scalar s;
        if (c != 0) s.terms_.emplace_back(e, c);
        return s;
    }
    static Scalar param(Param p, int32_t exp = 1)
    {
        ParamExp e;
        e.set(p, exp);
        return monomial(1, e);
    }
    static Scalar mu1() { return param(Param::mu1); }
    static Scalar mu2() { return param(Param::mu2); }
    static Scalar t(int32_t exp = 1) { return param(Param::t, exp); }
    static Scalar u(int32_t exp = 1) { return param(Param::u, exp); }

    const TermList& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_constant());
    }
    Rational constant_part() const { return coefficient(ParamExp{}); }
    Rational coefficient(const ParamExp& e) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const ParamExp& k) { return t.first < k; });
        return (it != terms_.end() && it->first == e) ? it->second : Rational(0);
    }

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    friend Scalar operator+(const Scalar& a, const Scalar& b)
    {
        Scalar r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() && ib != b.terms_.end()) {
            if (ia->first < ib->first) {
                r.terms_.push_back(*ia++);
            } else if (ib->first < ia->first) {
                r.terms_.push_back(*ib++);
            } else {
                Rational c = ia->second + ib->second;
                if (c != 0) r.terms_.emplace_back(ia->first, std::move(c));
                ++ia;
                ++ib;
            }
        }
        r.terms_.insert(r.terms_.end(), ia, a.terms_.end());
        r.terms_.insert(r.terms_.end(), ib, b.terms_.end());
        return r;
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar operator-() const
    {
        Scalar r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }

    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        Scalar r;
        if (a.terms_.empty() || b.terms_.empty()) return r;
        if (b.terms_.size() == 1) return a.times_term(b.terms_.front());
        if (a.terms_.size() == 1) return b.times_term(a.terms_.front());
        TermList scratch;
        scratch.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) scratch.emplace_back(ea + eb, ca * cb);
        std::sort(scratch.begin(), scratch.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        for (auto& term : scratch) {
            if (!r.terms_.empty() && r.terms_.back().first == term.first) {
                r.terms_.back().second += term.second;
                if (r.terms_.back().second == 0) r.terms_.pop_back();
            } else {
                r.terms_.push_back(std::move(term));
            }
        }
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar pow(int32_t n) const
    {
        if (n < 0) return inverse().pow(-n);
        Scalar r(1), base(*this);
        while (n > 0) {
            if (n & 1) r *= base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // Units are the nonzero rational multiples of t^a u^b.
    bool is_unit() const
    {
        if (terms_.size() != 1) return false;
        const ParamExp& e = terms_.front().first;
        return e.mu1 == 0 && e.mu2 == 0;
    }
    Scalar inverse() const
    {
        if (!is_unit()) throw NotAUnit("scalar is not a unit: " + str());
        const auto& [e, c] = terms_.front();
        ParamExp inv{0, 0, -e.t, -e.u};
        return monomial(Rational(1) / c, inv);
    }

    // Simultaneous substitution of parameters.  A binding whose image
    // mentions the bound parameter is rejected.
    Scalar specialize(const std::map<Param, Scalar>& bindings) const
    {
        for (const auto& [p, img] : bindings)
            for (const auto& [e, c] : img.terms())
                if (e.get(p) != 0)
                    throw CyclicBinding(std::string("binding for ") + param_name(p) +
                                        " mentions the bound parameter");
        Scalar result;
        for (const auto& [e, c] : terms_) {
            Scalar term(c);
            ParamExp rest;
            for (Param p : {Param::mu1, Param::mu2, Param::t, Param::u}) {
                int32_t k = e.get(p);
                if (k == 0) continue;
                auto it = bindings.find(p);
                if (it == bindings.end())
                    rest.set(p, k);
                else
                    term *= it->second.pow(k);
            }
            result += term.times_term({rest, Rational(1)});
        }
        return result;
    }

    // Fixed serialization grammar: sum of "<rational>*mu1^a*mu2^b*t^c*u^d"
    // terms, factors with exponent 0 omitted, "^1" omitted.
    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << rational_str(c);
            auto emit = [&os](const char* name, int32_t k) {
                if (k == 0) return;
                os << '*' << name;
                if (k != 1) os << '^' << k;
            };
            emit("mu1", e.mu1);
            emit("mu2", e.mu2);
            emit("t", e.t);
            emit("u", e.u);
        }
        return os.str();
    }

    static Scalar parse(std::string_view text);

private:
    // Multiplying by one term shifts every key by a constant, which keeps
    // the lexicographic ordering intact.
    Scalar times_term(const Term& t) const
    {
        Scalar r;
        r.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_) r.terms_.emplace_back(e + t.first, c * t.second);
        return r;
    }

    TermList terms_;
};

namespace detail {

// Splits "a + b - c" at top level; '-' after '^', '*' or '/' belongs to the
// following number.
inline std::vector<std::pair<int, std::string>> split_terms(std::string_view text)
{
    std::vector<std::pair<int, std::string>> out;
    int sign = 1;
    std::string cur;
    char prev_sig = 0;
    auto flush = [&] {
        if (cur.find_first_not_of(" \t") != std::string::npos) {
            out.emplace_back(sign, cur);
            sign = 1;
        }
        cur.clear();
    };
    for (char ch : text) {
        if (ch == '+' || ch == '-') {
            bool exponent_sign = (prev_sig == '^' || prev_sig == '*' || prev_sig == '/');
            if (!exponent_sign) {
                flush();
                if (ch == '-') sign = -sign;
                prev_sig = 0;
                continue;
            }
        }
        cur.push_back(ch);
        if (ch != ' ' && ch != '\t') prev_sig = ch;
    }
    flush();
    return out;
}

} // namespace detail

inline Scalar Scalar::parse(std::string_view text)
{
    auto trim = [](std::string s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return s.substr(b, e - b + 1);
    };
    Scalar result;
    for (auto& [sign, raw] : detail::split_terms(text)) {
        std::string term = trim(raw);
        if (term.empty()) throw ParseError("empty term in scalar literal");
        Rational coef(sign);
        ParamExp exp;
        size_t pos = 0;
        bool saw_factor = false;
        while (pos < term.size()) {
            size_t star = term.find('*', pos);
            std::string factor = trim(term.substr(pos, star == std::string::npos ? star : star - pos));
            pos = (star == std::string::npos) ? term.size() : star + 1;
            if (factor.empty()) throw ParseError("empty factor in scalar term '" + term + "'");
            if (std::isdigit(static_cast<unsigned char>(factor[0])) || factor[0] == '-' ||
                factor[0] == '+') {
                coef *= parse_rational(factor);
                saw_factor = true;
                continue;
            }
            size_t caret = factor.find('^');
            std::string name = trim(factor.substr(0, caret));
            int32_t k = 1;
            if (caret != std::string::npos)
                k = static_cast<int32_t>(std::stol(trim(factor.substr(caret + 1))));
            Param p;
            if (name == "mu1") p = Param::mu1;
            else if (name == "mu2") p = Param::mu2;
            else if (name == "t") p = Param::t;
            else if (name == "u") p = Param::u;
            else throw ParseError("unknown parameter '" + name + "'");
            if ((p == Param::mu1 || p == Param::mu2) && exp.get(p) + k < 0)
                throw ParseError("negative exponent for " + name);
            exp.set(p, exp.get(p) + k);
            saw_factor = true;
        }
        if (!saw_factor) throw ParseError("empty scalar term");
        result += Scalar::monomial(coef, exp);
    }
    return result;
}

} // namespace demazure
