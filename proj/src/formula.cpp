#include "thrsat/formula.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace thrsat {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse: return "parse_error";
        case ErrorKind::width: return "width_violation";
        case ErrorKind::budget_exceeded: return "budget_exceeded";
        case ErrorKind::role_missing: return "role_missing";
        case ErrorKind::too_large: return "too_large";
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::too_many_long_clauses: return "too_many_long_clauses";
    }
    return "error";
}

Clause::Clause(std::initializer_list<int> xs) {
    for (int x : xs) lits.push_back(Literal::from_int(x));
}

bool Clause::contains(Literal l) const {
    return std::find(lits.begin(), lits.end(), l) != lits.end();
}

bool Clause::mentions(std::uint32_t var) const {
    return std::any_of(lits.begin(), lits.end(), [&](Literal l) { return l.var == var; });
}

std::size_t CnfFormula::max_width() const {
    std::size_t w = 0;
    for (const auto& c : clauses) w = std::max(w, c.width());
    return w;
}

std::size_t CnfFormula::size() const {
    std::size_t s = 0;
    for (const auto& c : clauses) s += c.width();
    return s;
}

bool CnfFormula::has_empty_clause() const {
    return std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.empty(); });
}

void CnfFormula::set_role(std::uint32_t v, Role r) {
    if (v == 0 || v > num_vars) throw Error(ErrorKind::invalid_argument, "role for variable out of range");
    if (roles.empty()) roles.assign(num_vars, Role::plain);
    roles[v - 1] = r;
}

void CnfFormula::validate() const {
    if (!roles.empty() && roles.size() != num_vars)
        throw Error(ErrorKind::invalid_argument, "role vector length differs from num_vars");
    for (const auto& c : clauses)
        for (Literal l : c.lits)
            if (l.var == 0 || l.var > num_vars)
                throw Error(ErrorKind::invalid_argument, "literal " + literal_str(l) + " exceeds num_vars");
}

namespace {

struct Token {
    std::string_view text;
    std::size_t line;
};

bool parse_ll(std::string_view s, long long& out) {
    if (s.empty()) return false;
    const char* b = s.data();
    if (*b == '+') ++b;
    auto [p, ec] = std::from_chars(b, s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula f;
    bool have_header = false;
    std::vector<Literal> cur;
    std::size_t cur_line = 0;
    std::vector<std::pair<Role, std::vector<long long>>> role_lines;
    std::vector<std::size_t> role_line_nos;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        auto toks = split_ws(line);
        if (toks.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (toks[0] == "%") break;
        if (toks[0][0] == 'c') {
            if (toks[0] == "c" && toks.size() >= 2 && toks[1] == "role") {
                if (toks.size() < 3 || (toks[2] != "e" && toks[2] != "p"))
                    throw Error(ErrorKind::parse, "malformed role directive", line_no);
                Role r = toks[2] == "e" ? Role::existential : Role::probabilistic;
                std::vector<long long> vars;
                bool terminated = false;
                for (std::size_t i = 3; i < toks.size(); ++i) {
                    long long x;
                    if (!parse_ll(toks[i], x) || x < 0)
                        throw Error(ErrorKind::parse, "bad variable in role directive", line_no);
                    if (x == 0) {
                        terminated = true;
                        break;
                    }
                    vars.push_back(x);
                }
                if (!terminated) throw Error(ErrorKind::parse, "role directive missing terminating 0", line_no);
                role_lines.emplace_back(r, std::move(vars));
                role_line_nos.push_back(line_no);
            }
            if (end == text.size()) break;
            continue;
        }
        if (toks[0] == "p") {
            if (have_header) throw Error(ErrorKind::parse, "duplicate header", line_no);
            long long n, m;
            if (toks.size() != 4 || toks[1] != "cnf" || !parse_ll(toks[2], n) || !parse_ll(toks[3], m) || n < 0 ||
                m < 0 || n > (1LL << 31))
                throw Error(ErrorKind::parse, "malformed header, expected 'p cnf <n> <m>'", line_no);
            f.num_vars = static_cast<std::uint32_t>(n);
            have_header = true;
            if (end == text.size()) break;
            continue;
        }
        if (!have_header) throw Error(ErrorKind::parse, "clause data before 'p cnf' header", line_no);
        for (auto t : toks) {
            long long x;
            if (!parse_ll(t, x)) throw Error(ErrorKind::parse, "non-integer token '" + std::string(t) + "'", line_no);
            if (x == 0) {
                f.clauses.emplace_back(std::move(cur));
                cur.clear();
                cur_line = 0;
                continue;
            }
            if (static_cast<unsigned long long>(x < 0 ? -x : x) > f.num_vars)
                throw Error(ErrorKind::parse, "literal " + std::to_string(x) + " exceeds n", line_no);
            if (cur.empty()) cur_line = line_no;
            cur.push_back(Literal::from_int(x));
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw Error(ErrorKind::parse, "missing 'p cnf' header", line_no);
    if (!cur.empty()) throw Error(ErrorKind::parse, "clause without terminating 0", cur_line);
    for (std::size_t i = 0; i < role_lines.size(); ++i) {
        for (long long v : role_lines[i].second) {
            if (v < 1 || static_cast<unsigned long long>(v) > f.num_vars)
                throw Error(ErrorKind::parse, "role variable out of range", role_line_nos[i]);
            f.set_role(static_cast<std::uint32_t>(v), role_lines[i].first);
        }
    }
    return f;
}

std::string serialize_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (Role r : {Role::existential, Role::probabilistic}) {
        std::vector<std::uint32_t> vs;
        for (std::uint32_t v = 1; v <= f.num_vars; ++v)
            if (f.role(v) == r) vs.push_back(v);
        if (vs.empty()) continue;
        os << "c role " << (r == Role::existential ? 'e' : 'p');
        for (auto v : vs) os << ' ' << v;
        os << " 0\n";
    }
    for (const auto& c : f.clauses) {
        for (Literal l : c.lits) os << l.to_int() << ' ';
        os << "0\n";
    }
    return os.str();
}

CnfFormula normalize(const CnfFormula& f) {
    CnfFormula out;
    out.num_vars = f.num_vars;
    out.roles = f.roles;
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& c : f.clauses) {
        std::vector<Literal> ls = c.lits;
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        bool taut = false;
        for (std::size_t i = 0; i + 1 < ls.size(); ++i)
            if (ls[i].var == ls[i + 1].var) taut = true;
        if (taut) continue;
        std::vector<std::uint32_t> key;
        for (Literal l : ls) key.push_back(l.code());
        if (!seen.insert(key).second) continue;
        out.clauses.emplace_back(std::move(ls));
    }
    return out;
}

bool is_normalized(const CnfFormula& f) {
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& c : f.clauses) {
        std::vector<std::uint32_t> key;
        for (std::size_t i = 0; i < c.lits.size(); ++i) {
            if (i > 0 && c.lits[i - 1].var >= c.lits[i].var) return false;
            key.push_back(c.lits[i].code());
        }
        if (!seen.insert(key).second) return false;
    }
    return true;
}

Threshold Threshold::from_fraction(const mpz_class& p, const mpz_class& q) {
    if (q <= 0 || p <= 0 || p >= q)
        throw Error(ErrorKind::invalid_argument, "threshold must lie strictly between 0 and 1");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Threshold t;
    t.a = p / g;
    mpz_class d = q / g;
    t.v = static_cast<std::uint32_t>(mpz_scan1(d.get_mpz_t(), 0));
    mpz_class b;
    mpz_fdiv_q_2exp(b.get_mpz_t(), d.get_mpz_t(), t.v);
    t.b = b;
    return t;
}

Threshold Threshold::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        throw Error(ErrorKind::invalid_argument, "threshold must be written as p/q");
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    auto digits = [](std::string_view x) {
        return !x.empty() && std::all_of(x.begin(), x.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(num) || !digits(den))
        throw Error(ErrorKind::invalid_argument, "threshold must be written as p/q with decimal integers");
    return from_fraction(mpz_class(std::string(num)), mpz_class(std::string(den)));
}

mpq_class Threshold::value() const {
    mpq_class r(a, denominator());
    r.canonicalize();
    return r;
}

mpz_class Threshold::denominator() const { return pow2(v) * b; }

std::string Threshold::str() const { return a.get_str() + "/" + denominator().get_str(); }

const char* ordering_name(Ordering o) {
    switch (o) {
        case Ordering::LT: return "LT";
        case Ordering::EQ: return "EQ";
        case Ordering::GT: return "GT";
    }
    return "?";
}

Ordering compare_count_to_threshold(const mpz_class& N, const Threshold& rho, std::uint32_t n) {
    mpz_class lhs = N * rho.denominator();
    mpz_class rhs = rho.a * pow2(n);
    int c = cmp(lhs, rhs);
    return c < 0 ? Ordering::LT : (c == 0 ? Ordering::EQ : Ordering::GT);
}

Ordering compare_count_to_threshold(const ExactCount& N, const Threshold& rho, std::uint32_t n) {
    return compare_count_to_threshold(N.value, rho, n);
}

mpz_class pow2(std::uint64_t e) {
    mpz_class r;
    mpz_setbit(r.get_mpz_t(), e);
    return r;
}

std::size_t popcount(const mpz_class& x) { return mpz_popcount(x.get_mpz_t()); }

std::string literal_str(Literal l) { return std::to_string(l.to_int()); }

std::string clause_str(const Clause& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
        if (i) s += ' ';
        s += literal_str(c.lits[i]);
    }
    return s + ")";
}

}  // namespace thrsat
