#include "ecb/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "ecb/errors.hpp"

namespace ecb {

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

MultiPoly::MultiPoly(std::vector<std::string> variables, Terms terms) : vars_(std::move(variables)) {
    for (auto& [e, c] : terms) {
        if (e.size() != vars_.size()) throw precondition_error("exponent vector length does not match arity");
        for (int k : e) {
            if (k < 0) throw precondition_error("negative exponent");
        }
        if (c != 0) terms_.emplace(e, c);
    }
}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, const Rational& c) {
    Exponents zero(variables.size(), 0);
    return monomial(std::move(variables), std::move(zero), c);
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, std::size_t index) {
    if (index >= variables.size()) throw precondition_error("variable index out of range");
    Exponents e(variables.size(), 0);
    e[index] = 1;
    return monomial(std::move(variables), std::move(e), Rational(1));
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, const std::string& name) {
    MultiPoly probe(variables);
    return variable(std::move(variables), probe.require_index(name));
}

MultiPoly MultiPoly::monomial(std::vector<std::string> variables, Exponents exps, const Rational& c) {
    Terms t;
    t.emplace(std::move(exps), c);
    return MultiPoly(std::move(variables), std::move(t));
}

std::optional<std::size_t> MultiPoly::index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t MultiPoly::require_index(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) throw precondition_error("unknown variable '" + name + "'");
    return *idx;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
    return best;
}

int MultiPoly::degree_in(std::size_t var) const {
    int best = -1;
    for (const auto& [e, c] : terms_) best = std::max(best, e.at(var));
    return best;
}

int MultiPoly::block_degree(const std::vector<std::size_t>& block) const {
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (std::size_t i : block) d += e.at(i);
        best = std::max(best, d);
    }
    return best;
}

std::vector<int> MultiPoly::multidegree(const std::vector<std::vector<std::size_t>>& blocks) const {
    std::vector<int> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) out.push_back(block_degree(b));
    return out;
}

bool MultiPoly::is_homogeneous() const {
    std::vector<std::size_t> all(vars_.size());
    std::iota(all.begin(), all.end(), 0);
    return is_multihomogeneous({all});
}

bool MultiPoly::is_multihomogeneous(const std::vector<std::vector<std::size_t>>& blocks) const {
    std::optional<std::vector<int>> first;
    for (const auto& [e, c] : terms_) {
        std::vector<int> d;
        for (const auto& b : blocks) {
            int s = 0;
            for (std::size_t i : b) s += e.at(i);
            d.push_back(s);
        }
        if (!first) first = d;
        else if (*first != d) return false;
    }
    return true;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw precondition_error("polynomials over different variable lists");
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    check_compatible(o);
    Terms out;
    Exponents e(vars_.size());
    Rational prod;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            prod = ca * cb;
            auto [it, inserted] = out.try_emplace(e, prod);
            if (!inserted) it->second += prod;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) it = out.erase(it);
        else ++it;
    }
    terms_ = std::move(out);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly result = constant(vars_, Rational(1));
    MultiPoly base = *this;
    while (k > 0) {
        if (k & 1U) result *= base;
        k >>= 1U;
        if (k > 0) base *= base;
    }
    return result;
}

namespace {

Rational rational_pow(const Rational& x, int k) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(k));
    r.canonicalize();
    return r;
}

}  // namespace

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw precondition_error("evaluation point has the wrong arity");
    std::vector<std::vector<Rational>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const int d = std::max(degree_in(i), 0);
        powers[i].resize(static_cast<std::size_t>(d) + 1);
        powers[i][0] = 1;
        for (int k = 1; k <= d; ++k) powers[i][static_cast<std::size_t>(k)] = powers[i][static_cast<std::size_t>(k) - 1] * point[i];
    }
    Rational sum = 0, term;
    for (const auto& [e, c] : terms_) {
        term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) term *= powers[i][static_cast<std::size_t>(e[i])];
        }
        sum += term;
    }
    return sum;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    if (var >= vars_.size()) throw precondition_error("variable index out of range");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents f = e;
        f[var] -= 1;
        out.add_term(f, c * e[var]);
    }
    return out;
}

MultiPoly MultiPoly::normalized_derivative(const Exponents& alpha) const {
    if (alpha.size() != vars_.size()) throw precondition_error("derivative multi-index has the wrong arity");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        bool ok = true;
        Integer factor = 1;
        Exponents f = e;
        for (std::size_t i = 0; i < e.size() && ok; ++i) {
            if (alpha[i] < 0) throw precondition_error("negative derivative order");
            if (e[i] < alpha[i]) {
                ok = false;
                break;
            }
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(e[i]), static_cast<unsigned long>(alpha[i]));
            factor *= b;
            f[i] -= alpha[i];
        }
        if (ok) out.add_term(f, c * factor);
    }
    return out;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& args) const {
    if (args.size() != vars_.size()) throw precondition_error("composition arity mismatch");
    if (args.empty()) return *this;
    const auto& target = args.front().variables();
    for (const auto& a : args) {
        if (a.variables() != target) throw precondition_error("composition arguments over different variable lists");
    }
    std::vector<std::vector<MultiPoly>> powers(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        const int d = std::max(degree_in(i), 0);
        powers[i].push_back(constant(target, Rational(1)));
        for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * args[i]);
    }
    MultiPoly out(target);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) term *= powers[i][static_cast<std::size_t>(e[i])];
        }
        out += term;
    }
    return out;
}

MultiPoly MultiPoly::specialize(const std::map<std::string, Rational>& values) const {
    std::vector<std::string> keep;
    std::vector<std::size_t> keep_idx;
    std::vector<std::pair<std::size_t, Rational>> fixed;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = values.find(vars_[i]);
        if (it == values.end()) {
            keep.push_back(vars_[i]);
            keep_idx.push_back(i);
        } else {
            fixed.emplace_back(i, it->second);
        }
    }
    MultiPoly out(keep);
    for (const auto& [e, c] : terms_) {
        Rational v = c;
        for (const auto& [i, x] : fixed) {
            if (e[i] != 0) v *= rational_pow(x, e[i]);
        }
        Exponents f;
        f.reserve(keep_idx.size());
        for (std::size_t i : keep_idx) f.push_back(e[i]);
        out.add_term(f, v);
    }
    return out;
}

MultiPoly MultiPoly::with_variables(const std::vector<std::string>& variables) const {
    std::vector<std::optional<std::size_t>> target(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(variables.begin(), variables.end(), vars_[i]);
        if (it != variables.end()) target[i] = static_cast<std::size_t>(it - variables.begin());
    }
    MultiPoly out(variables);
    for (const auto& [e, c] : terms_) {
        Exponents f(variables.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!target[i]) throw precondition_error("variable '" + vars_[i] + "' occurs but is not in the new variable list");
            f[*target[i]] += e[i];
        }
        out.add_term(f, c);
    }
    return out;
}

MultiPoly MultiPoly::divide_by_monomial(const Exponents& d) const {
    if (d.size() != vars_.size()) throw precondition_error("monomial has the wrong arity");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        for (std::size_t i = 0; i < e.size(); ++i) {
            f[i] -= d[i];
            if (f[i] < 0) throw invariant_error("inexact monomial division");
        }
        out.terms_.emplace(std::move(f), c);
    }
    return out;
}

MultiPoly MultiPoly::homogenize(std::size_t var, int degree) const {
    if (var >= vars_.size()) throw precondition_error("variable index out of range");
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != 0) throw precondition_error("homogenizing variable already occurs");
        const int d = std::accumulate(e.begin(), e.end(), 0);
        if (d > degree) throw precondition_error("polynomial degree exceeds the homogenization degree");
        Exponents f = e;
        f[var] = degree - d;
        out.terms_.emplace(std::move(f), c);
    }
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first) os << (negative ? "-" : "");
        else os << (negative ? " - " : " + ");
        first = false;
        std::ostringstream mono;
        bool any = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (any) mono << ' ';
            mono << vars_[i];
            if (e[i] != 1) mono << '^' << e[i];
            any = true;
        }
        if (!any) os << format_rational(mag);
        else if (mag == 1) os << mono.str();
        else os << format_rational(mag) << " * " << mono.str();
    }
    return os.str();
}

bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r *= b;
    return r;
}
MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    MultiPoly run() {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
    }

    MultiPoly expr() {
        MultiPoly acc(vars_);
        bool negate = false;
        if (peek('-')) {
            ++pos_;
            negate = true;
        } else if (peek('+')) {
            ++pos_;
        }
        MultiPoly t = term();
        acc += negate ? -t : t;
        while (true) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc *= factor();
            } else if (starts_primary()) {
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly factor() {
        if (peek('-')) {
            ++pos_;
            return -factor();
        }
        MultiPoly base = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected an exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    MultiPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lit = digits();
            skip();
            // A '/' directly after an integer literal forms a rational literal.
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                lit += "/" + digits();
            }
            return MultiPoly::constant(vars_, parse_rational(lit));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) fail("unknown variable '" + name + "'");
            return MultiPoly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return s_.substr(start, pos_ - start);
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, std::vector<std::string> variables) {
    Parser p(text, variables);
    return p.run();
}

// ---------------------------------------------------------------- heights

std::vector<Rational> PolyFamily::coefficients() const {
    std::vector<Rational> out;
    for (const auto& m : members) {
        for (const auto& [e, c] : m.terms()) out.push_back(c);
    }
    return out;
}

Rational local_height_exact(const MultiPoly& p, const Place& v) {
    if (p.is_zero()) throw domain_error("local height of the zero polynomial");
    Rational best = 0;
    for (const auto& [e, c] : p.terms()) best = std::max(best, abs_value(c, v));
    return best;
}

Rational local_length_exact(const MultiPoly& p) {
    if (p.is_zero()) throw domain_error("local length of the zero polynomial");
    Rational sum = 0;
    for (const auto& [e, c] : p.terms()) sum += abs(c);
    return sum;
}

LogValue local_height(const MultiPoly& p, const Place& v, int precision_bits) {
    return log_of(local_height_exact(p, v), precision_bits);
}

LogValue local_length(const MultiPoly& p, const Place& v, int precision_bits) {
    if (!v.is_archimedean()) throw precondition_error("local length is only defined at the archimedean place");
    return log_of(local_length_exact(p), precision_bits);
}

namespace {

void require_nonzero(const PolyFamily& f) {
    for (const auto& m : f.members) {
        if (!m.is_zero()) return;
    }
    throw domain_error("height of an all-zero family");
}

}  // namespace

Rational local_height_exact(const PolyFamily& f, const Place& v) {
    require_nonzero(f);
    Rational best = 0;
    for (const auto& m : f.members) {
        if (!m.is_zero()) best = std::max(best, local_height_exact(m, v));
    }
    return best;
}

Rational local_length_exact(const PolyFamily& f) {
    require_nonzero(f);
    Rational best = 0;
    for (const auto& m : f.members) {
        if (!m.is_zero()) best = std::max(best, local_length_exact(m));
    }
    return best;
}

LogValue local_height(const PolyFamily& f, const Place& v, int precision_bits) {
    return log_of(local_height_exact(f, v), precision_bits);
}

LogValue local_length(const PolyFamily& f, const Place& v, int precision_bits) {
    if (!v.is_archimedean()) throw precondition_error("local length is only defined at the archimedean place");
    return log_of(local_length_exact(f), precision_bits);
}

LogValue gauss_weil_height(const PolyFamily& f, int precision_bits) {
    require_nonzero(f);
    return tuple_height(f.coefficients(), precision_bits);
}

std::vector<Place> relevant_places(const PolyFamily& f) {
    require_nonzero(f);
    return support_places(f.coefficients());
}

}  // namespace ecb
