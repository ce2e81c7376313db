#include "thrsat/arithmetic.hpp"
#include "thrsat/solvers.hpp"

#include <algorithm>

namespace thrsat {

namespace {

mpq_class one_minus_pow2(std::uint32_t j) { return 1 - mpq_class(1, pow2(j)); }

// Values whose bit length exceeds this are never materialized in a power
// search; a logarithmic lower bound is used instead.
constexpr std::size_t kExactBitsCap = 1u << 16;
// Lower bounds on galactic quantities are clamped at 2^kGalacticBits.
constexpr std::size_t kGalacticBits = 256;
// eta() is evaluated exactly only for m up to this size.
constexpr std::uint64_t kEtaExactMax = 1u << 20;

std::size_t bitlen(const mpz_class& x) { return x <= 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

Param param_max(const Param& a, const Param& b) {
    return Param{a.value > b.value ? a.value : b.value, a.exact && b.exact};
}

Param param_mul(const Param& a, const Param& b) { return Param{a.value * b.value, a.exact && b.exact}; }

std::string prefix_str(const std::vector<std::uint64_t>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

}  // namespace

Param smallest_power_below_param(std::uint32_t j, const mpq_class& x, const Param& denom) {
    if (x <= 0) throw Error(ErrorKind::invalid_argument, "power bound needs a positive target");
    if (bitlen(denom.value) <= kExactBitsCap) {
        mpq_class target = x / mpq_class(denom.value);
        return Param{smallest_power_below(one_minus_pow2(j), target), denom.exact};
    }
    // (1-2^-j)^q < x/d needs q > ln(d/x) / -ln(1-2^-j) >= ln(d) (2^j - 1) when x <= 1.
    mpz_class bits = bitlen(denom.value) - 1;
    mpz_class lb = bits * 69 * (pow2(j) - 1) / 100;
    return Param::at_least(lb);
}

// ---- 3-CNF schedule ----------------------------------------------------------

Schedule3::Schedule3(const Threshold& rho, const ScheduleOverride& ov) {
    const mpq_class r = rho.value();
    z_ = ov.z ? *ov.z : smallest_power_below(mpq_class(7, 8), r).get_ui();
    t_ = floor_log2_inv(rho);
    if (!ov.q.empty()) {
        if (ov.q.size() != t_ + 1)
            throw Error(ErrorKind::invalid_argument, "override needs q_0..q_t, t = " + std::to_string(t_));
        for (auto q : ov.q) q_.push_back(Param::of(q));
        return;
    }
    q_.assign(t_ + 1, Param{});
    const mpq_class gap_z = r - pow_q(mpq_class(7, 8), z_);
    const mpq_class gap_t = r - mpq_class(1, pow2(t_ + 1));
    mpz_class a = smallest_power_below(mpq_class(3, 4), gap_z / (t_ + 1));
    mpz_class b = smallest_power_below(mpq_class(3, 4), gap_t / (t_ + 1));
    q_[t_] = Param::of(std::max(a, b));
    for (std::uint64_t rr = t_; rr >= 1; --rr) {
        const Param& qr = q_[rr];
        // m_r = 7^z 3^{3 z q_r} leaves after a stage with parameters (z, q_r);
        // log2 m_r lies in [3 z q_r, 3 z + 6 z q_r].
        const mpz_class e3 = 3 * mpz_class(z_) * qr.value;
        Param next;
        if (qr.exact && 3 * mpz_class(z_) + 2 * e3 <= 20) {
            mpz_class m, p3;
            mpz_pow_ui(m.get_mpz_t(), mpz_class(7).get_mpz_t(), z_);
            mpz_pow_ui(p3.get_mpz_t(), mpz_class(3).get_mpz_t(), e3.get_ui());
            m *= p3;
            mpq_class e = eta(rho, m.get_ui());
            mpz_class q = smallest_power_below(mpq_class(3, 4), e / rr);
            next = Param::of(std::max<mpz_class>(q, qr.value + 1));
        } else {
            mpz_class m_lb;
            if (e3 <= kGalacticBits) {
                mpz_class p3;
                mpz_pow_ui(m_lb.get_mpz_t(), mpz_class(7).get_mpz_t(), z_);
                mpz_pow_ui(p3.get_mpz_t(), mpz_class(3).get_mpz_t(), e3.get_ui());
                m_lb *= p3;
            } else {
                m_lb = pow2(kGalacticBits);
            }
            // eta <= 2^-m and -ln(3/4) < 1/3, so (3/4)^q < eta forces q > 3 m ln 2.
            mpz_class lb = m_lb * 207 / 100 + 1;
            next = Param::at_least(std::max<mpz_class>(lb, qr.value + 1));
        }
        q_[rr - 1] = next;
    }
}

std::vector<std::pair<std::string, std::string>> Schedule3::describe() const {
    std::vector<std::pair<std::string, std::string>> out{{"z", std::to_string(z_)}, {"t", std::to_string(t_)}};
    for (std::size_t r = 0; r < q_.size(); ++r) out.emplace_back("q_" + std::to_string(r), q_[r].str());
    return out;
}

// ---- k-CNF schedule ----------------------------------------------------------

ScheduleK::ScheduleK(const Threshold& rho, std::uint32_t k, const ScheduleOverride& ov)
    : rho_(rho), k_(k), ov_(ov) {
    if (k < 2) throw Error(ErrorKind::invalid_argument, "k-CNF schedule needs k >= 2");
    const mpq_class r = rho.value();
    const mpq_class ck = one_minus_pow2(k);
    z_ = ov.z ? *ov.z : smallest_power_below(ck, r).get_ui();
    t1_ = ceil_log2_inv(rho);
    alpha_ = r - pow_q(ck, z_);
    beta_ = r - ck / mpq_class(pow2(t1_));
    gamma_ = std::min(alpha_, beta_);
}

bool ScheduleK::has_later_prefix(const std::vector<std::uint64_t>& prefix) {
    for (std::uint32_t v = 1; v <= prefix.size(); ++v) {
        std::vector<std::uint64_t> head(prefix.begin(), prefix.begin() + (v - 1));
        Param tv = t(v, head);
        if (!param_at_most(tv, prefix[v - 1] + 1, "t_" + std::to_string(v) + prefix_str(head))) return true;
    }
    return false;
}

Param ScheduleK::m_lower_bound() const {
    // Leaves of the extraction tree with Q_0 = z and every other Q_a >= 1:
    // stage sizes L_0 = z-1, L_{a+1} = prod_{j<=a} ((k-j) L_j + 1) - 1.
    std::vector<mpz_class> L{mpz_class(z_ - 1)};
    mpz_class prod = 1;
    for (std::uint32_t a = 0; a + 2 < k_; ++a) {
        prod *= mpz_class(k_ - a) * L[a] + 1;
        if (bitlen(prod) > kGalacticBits) return Param::at_least(pow2(kGalacticBits));
        L.push_back(prod - 1);
    }
    mpz_class bits = 0;
    for (std::size_t a = 0; a < L.size(); ++a) bits += L[a] * (k_ - a - 1);
    if (bits > kGalacticBits) return Param::at_least(pow2(kGalacticBits));
    mpz_class m = 1;
    for (std::size_t a = 0; a < L.size(); ++a) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), mpz_class(pow2(k_ - a) - 1).get_mpz_t(), L[a].get_ui());
        m *= f;
    }
    return Param::at_least(m);
}

Param ScheduleK::eta_bound(std::uint32_t width_gap, const Param& denom) const {
    Param m = m_lower_bound();
    if (m.value <= kEtaExactMax) {
        mpq_class e = eta(rho_, m.value.get_ui());
        Param p = smallest_power_below_param(width_gap, e, denom);
        p.exact = false;
        return p;
    }
    // eta <= 2^-m and -ln(1-2^-j) <= 1/(2^j-1).
    return Param::at_least(m.value * (pow2(width_gap) - 1) * 69 / 100 + 1);
}

Param ScheduleK::T(std::uint32_t w) {
    Param acc = Param::of(1ul);
    for (std::uint32_t v = 1; v < w; ++v) {
        if (v == 1) {
            acc = param_mul(acc, Param::of(t1_));
            continue;
        }
        // max over reachable prefixes of length v-1; enumerate when small.
        std::vector<std::vector<std::uint64_t>> prefixes{{}};
        bool enumerable = true;
        for (std::uint32_t u = 1; u < v && enumerable; ++u) {
            std::vector<std::vector<std::uint64_t>> next;
            for (const auto& p : prefixes) {
                Param tu = t(u, p);
                if (!tu.exact || tu.value > 64 || next.size() > 4096) {
                    enumerable = false;
                    break;
                }
                for (std::uint64_t x = 0; x < tu.value.get_ui(); ++x) {
                    auto q = p;
                    q.push_back(x);
                    next.push_back(std::move(q));
                }
            }
            prefixes = std::move(next);
        }
        Param best;
        if (enumerable) {
            best = Param::of(0ul);
            for (const auto& p : prefixes) best = param_max(best, t(v, p));
        } else {
            best = t(v, std::vector<std::uint64_t>(v - 1, 0));
            best.exact = false;
        }
        acc = param_mul(acc, best);
    }
    return acc;
}

Param ScheduleK::t(std::uint32_t w, const std::vector<std::uint64_t>& prefix) {
    if (w == 1) return Param::of(t1_);
    if (ov_.t.size() >= w - 1) return Param::of(ov_.t[w - 2]);
    auto key = std::make_pair(w, prefix);
    if (auto it = tcache_.find(key); it != tcache_.end()) return it->second;
    // (1-2^-w)^{ceil(t/D)} < rho - alpha with D = 2w (w-1)! 2^{w-1} prod (Q_u - 1).
    mpz_class e = smallest_power_below(one_minus_pow2(w), rho_.value() - alpha_);
    Param D = Param::of(mpz_class(2 * w) * pow2(w - 1));
    for (std::uint32_t u = 1; u < w; ++u) D.value *= u;
    for (std::uint32_t u = 1; u < w; ++u) {
        std::vector<std::uint64_t> head(prefix.begin(), prefix.begin() + u);
        Param qu = q(u, head);
        D = param_mul(D, Param{qu.value - 1, qu.exact});
    }
    Param out{(e - 1) * D.value + 1, D.exact};
    tcache_[key] = out;
    return out;
}

Param ScheduleK::q(std::uint32_t w, const std::vector<std::uint64_t>& prefix) {
    if (ov_.q.size() >= w) return Param::of(ov_.q[w - 1]);
    auto key = std::make_pair(w, prefix);
    if (auto it = qcache_.find(key); it != qcache_.end()) return it->second;
    std::vector<std::uint64_t> head(prefix.begin(), prefix.end() - 1);
    Param tw = t(w, head);
    Param denom = param_mul(param_mul(Param::of(mpz_class(k_ - 2)), T(w)), tw);
    // Main petal bound with gamma = min(alpha, beta).
    Param out = smallest_power_below_param(k_ - w, gamma_, denom);
    // Petal avoidance: q_w > 2w (q_v - 1) + 1 for v < w.
    for (std::uint32_t v = 1; v < w; ++v) {
        Param qv = q(v, std::vector<std::uint64_t>(prefix.begin(), prefix.begin() + v));
        out = param_max(out, Param{2 * mpz_class(w) * (qv.value - 1) + 2, qv.exact});
    }
    // Strictly decreasing in the last argument: q_w(.., r) >= q_w(.., t_w - 1) + t_w - 1 - r.
    if (tw.value > prefix.back() + 1) out.value = std::max<mpz_class>(out.value, tw.value - prefix.back());
    // Gap requirement against every lexicographically later r-vector.
    if (has_later_prefix(prefix)) out = param_max(out, eta_bound(k_ - w, denom));
    qcache_[key] = out;
    return out;
}

std::vector<std::pair<std::string, std::string>> ScheduleK::describe() const {
    std::vector<std::pair<std::string, std::string>> out{
        {"k", std::to_string(k_)}, {"z", std::to_string(z_)}, {"t_1", std::to_string(t1_)}};
    for (const auto& [key, p] : qcache_)
        out.emplace_back("q_" + std::to_string(key.first) + prefix_str(key.second), p.str());
    for (const auto& [key, p] : tcache_)
        out.emplace_back("t_" + std::to_string(key.first) + prefix_str(key.second), p.str());
    for (std::size_t w = 0; w < ov_.q.size(); ++w)
        out.emplace_back("q_" + std::to_string(w + 1) + "(override)", std::to_string(ov_.q[w]));
    for (std::size_t w = 0; w < ov_.t.size(); ++w)
        out.emplace_back("t_" + std::to_string(w + 2) + "(override)", std::to_string(ov_.t[w]));
    return out;
}

}  // namespace thrsat
