#include "scalewave/kernels.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace scalewave {

namespace {

using TermKey = std::tuple<int, int, int>;

std::vector<KernelTerm> combine_terms(const std::vector<KernelTerm>& raw) {
    std::map<TermKey, double> acc;
    for (const KernelTerm& t : raw) acc[{t.pow_rho, t.pow_shift, t.quad_twice}] += t.coef;
    std::vector<KernelTerm> out;
    out.reserve(acc.size());
    for (const auto& [key, coef] : acc) {
        if (coef == 0.0) continue;
        out.push_back(KernelTerm{coef, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    }
    return out;
}

// Adjoint operator d/drho(-1/(2 rho) .) applied to one term; product rule
// yields up to three children.
void apply_adjoint(const KernelTerm& t, std::vector<KernelTerm>& out) {
    // -t/(2 rho) has coef -c/2, rho-power a.
    const double c = -0.5 * t.coef;
    const int a = t.pow_rho - 1;
    if (a != 0) out.push_back(KernelTerm{c * a, a - 1, t.pow_shift, t.quad_twice});
    if (t.pow_shift > 0)
        out.push_back(KernelTerm{c * t.pow_shift, a, t.pow_shift - 1, t.quad_twice});
    // d/drho (r^2-(rho-t)^2)^g = -2 g (rho-t) (.)^(g-1)
    out.push_back(KernelTerm{-2.0 * c * t.pow_quad(), a, t.pow_shift + 1, t.quad_twice - 2});
}

inline double ipow(double x, int e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double v = 1.0;
    while (e > 0) {
        if (e & 1) v *= x;
        x *= x;
        e >>= 1;
    }
    return v;
}

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

int KernelSum::min_quad_twice() const {
    int mq = terms.empty() ? 0 : terms.front().quad_twice;
    for (const KernelTerm& t : terms) mq = std::min(mq, t.quad_twice);
    return mq;
}

const KernelSum& build_Hj(int m, int j) {
    if (m < 1) throw std::domain_error("build_Hj: requires m >= 1");
    if (j < 0 || j > m) throw std::domain_error("build_Hj: requires 0 <= j <= m");

    static std::map<std::pair<int, int>, KernelSum> cache;
    std::lock_guard<std::mutex> lock(cache_mutex());

    auto it = cache.find({m, j});
    if (it != cache.end()) return it->second;

    KernelSum ks;
    ks.m = m;
    ks.j = 0;
    ks.terms = {KernelTerm{1.0, 0, 0, 2 * m - 1}};
    for (int level = 1; level <= j; ++level) {
        std::vector<KernelTerm> next;
        next.reserve(3 * ks.terms.size());
        for (const KernelTerm& t : ks.terms) apply_adjoint(t, next);
        ks.terms = combine_terms(next);
        ks.j = level;
    }
    // Integrability at the endpoints of the quadratic factor.
    if (ks.min_quad_twice() < -1)
        throw std::logic_error("build_Hj: term with quadratic exponent below -1/2");
    return cache.emplace(std::make_pair(m, j), std::move(ks)).first->second;
}

KernelSum kernel_sum_r_derivative(const KernelSum& ks) {
    KernelSum d;
    d.m = ks.m;
    d.j = ks.j;
    d.r_prefactor = ks.r_prefactor + 1;
    d.terms.reserve(ks.terms.size());
    for (const KernelTerm& t : ks.terms)
        d.terms.push_back(KernelTerm{2.0 * t.coef * t.pow_quad(), t.pow_rho, t.pow_shift,
                                     t.quad_twice - 2});
    d.terms = combine_terms(d.terms);
    return d;
}

namespace {

const KernelSum& cached_dr_sum(const KernelSum& ks) {
    static std::map<std::tuple<int, int, int>, KernelSum> cache;
    std::lock_guard<std::mutex> lock(cache_mutex());
    const auto key = std::make_tuple(ks.m, ks.j, ks.r_prefactor);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, kernel_sum_r_derivative(ks)).first;
    return it->second;
}

// G_j = H_j'/rho - H_j/rho^2, the lambda-derivative core of K_j.
KernelSum lambda_derivative_sum(const KernelSum& ks) {
    KernelSum d;
    d.m = ks.m;
    d.j = ks.j;
    d.r_prefactor = ks.r_prefactor;
    std::vector<KernelTerm> raw;
    for (const KernelTerm& t : ks.terms) {
        const int a = t.pow_rho - 1;  // the common 1/rho
        if (t.pow_rho != 0)
            raw.push_back(KernelTerm{t.coef * t.pow_rho, a - 1, t.pow_shift, t.quad_twice});
        if (t.pow_shift != 0)
            raw.push_back(KernelTerm{t.coef * t.pow_shift, a, t.pow_shift - 1, t.quad_twice});
        raw.push_back(
            KernelTerm{-2.0 * t.coef * t.pow_quad(), a, t.pow_shift + 1, t.quad_twice - 2});
        raw.push_back(KernelTerm{-t.coef, t.pow_rho - 2, t.pow_shift, t.quad_twice});
    }
    d.terms = combine_terms(raw);
    return d;
}

const KernelSum& cached_dlambda_sum(const KernelSum& ks) {
    static std::map<std::tuple<int, int, int>, KernelSum> cache;
    std::lock_guard<std::mutex> lock(cache_mutex());
    const auto key = std::make_tuple(ks.m, ks.j, ks.r_prefactor);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, lambda_derivative_sum(ks)).first;
    return it->second;
}

}  // namespace

double eval_Hj(const KernelSum& ks, double rho, double t, double r) {
    const double shift = rho - t;
    const double quad = r * r - shift * shift;
    if (quad <= 0.0) {
        // Outside |rho-t| < r the half powers are not real; callers only
        // sample the open interval, so treat the boundary as the limit.
        return ks.min_quad_twice() >= 0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const double sq = std::sqrt(quad);
    double sum = 0.0;
    for (const KernelTerm& term : ks.terms) {
        double v = term.coef;
        if (term.pow_rho != 0) v *= ipow(rho, term.pow_rho);
        if (term.pow_shift != 0) v *= ipow(shift, term.pow_shift);
        if (term.quad_twice != 0) v *= ipow(quad, (term.quad_twice - 1) / 2) * sq;
        sum += v;
    }
    return sum;
}

namespace {

// Evaluation of one H_j sum at rho = lo + x using cancellation-free local
// factors: q1 = rho-(t-r), q2 = (t+r)-rho, d1 = rho-lambda, d2 = rho+lambda
// are all assembled from nonnegative offsets, never by subtracting nearly
// equal doubles.
struct KernelFrame {
    double t, r, lambda;
    double lo;
    double q1_lo;  // lo - (t - r)
    double q2_lo;  // (t + r) - lo
    double d1_lo;  // lo - lambda
};

double eval_sum_over_sqrt(const KernelSum& ks, const KernelFrame& fr, double x) {
    const double rho = fr.lo + x;
    const double q1 = fr.q1_lo + x;
    const double q2 = fr.q2_lo - x;
    const double d1 = fr.d1_lo + x;
    const double d2 = rho + fr.lambda;
    if (q1 <= 0.0 || q2 <= 0.0 || d1 <= 0.0) return 0.0;  // rounded-away sliver
    const double quad = q1 * q2;
    const double sq = std::sqrt(quad);
    const double shift = rho - fr.t;
    double sum = 0.0;
    for (const KernelTerm& term : ks.terms) {
        double v = term.coef;
        if (term.pow_rho != 0) v *= ipow(rho, term.pow_rho);
        if (term.pow_shift != 0) v *= ipow(shift, term.pow_shift);
        if (term.quad_twice != 0) v *= ipow(quad, (term.quad_twice - 1) / 2) * sq;
        sum += v;
    }
    return sum / std::sqrt(d1 * d2);
}

// The kernel integrand has half-power singularities at the interval ends and
// a second half-power root at distance delta_left below the lower end (the
// other zero of (rho^2-lambda^2) or of the quadratic factor). When the two
// roots nearly coincide the plain s^2 substitution leaves a boundary layer of
// width sqrt(delta); x = delta sinh^2(w) removes both exactly.
double integrate_kernel(const KernelSum& ks, double lambda, double t, double r, double lo,
                        double hi, double delta_left, const QuadOptions& opts,
                        const char* what) {
    if (!(hi > lo)) return 0.0;
    KernelFrame fr;
    fr.t = t;
    fr.r = r;
    fr.lambda = lambda;
    fr.lo = lo;
    fr.q1_lo = std::max(lo - (t - r), 0.0);
    fr.q2_lo = std::max((t + r) - lo, 0.0);
    fr.d1_lo = std::max(lo - lambda, 0.0);
    const double width = hi - lo;
    const double half = 0.5 * width;

    QuadResult res;
    auto accumulate = [&](const QuadResult& part) {
        res.value += part.value;
        res.error += part.error;
        res.evals += part.evals;
        res.converged = res.converged && part.converged;
    };

    if (delta_left > 0.0 && delta_left < 0.5 * half) {
        const double wmax = std::asinh(std::sqrt(half / delta_left));
        accumulate(integrate_adaptive(
            [&](double w) {
                const double sh = std::sinh(w), ch = std::cosh(w);
                const double x = delta_left * sh * sh;
                return eval_sum_over_sqrt(ks, fr, x) * 2.0 * delta_left * sh * ch;
            },
            0.0, wmax, opts));
    } else {
        accumulate(integrate_adaptive(
            [&](double s) { return 2.0 * s * eval_sum_over_sqrt(ks, fr, s * s); }, 0.0,
            std::sqrt(half), opts));
    }
    accumulate(integrate_adaptive(
        [&](double s) { return 2.0 * s * eval_sum_over_sqrt(ks, fr, width - s * s); }, 0.0,
        std::sqrt(width - half), opts));

    require_converged(res, what);
    const double scale = ks.r_prefactor != 0 ? ipow(r, ks.r_prefactor) : 1.0;
    return scale * res.value;
}

void check_K_domain(double lambda, double t, double r, const char* what) {
    if (!(r > 0.0) || t < 0.0)
        throw std::domain_error(std::string(what) + ": requires r > 0 and t >= 0");
    const double pad = 1e-12 * (t + r);
    if (lambda < std::abs(t - r) - pad || lambda > t + r + pad)
        throw std::domain_error(std::string(what) + ": lambda outside [|t-r|, t+r]");
}

void check_Ktilde_domain(double lambda, double t, double r, const char* what) {
    if (!(r > 0.0) || !(t > r))
        throw std::domain_error(std::string(what) + ": requires t > r > 0");
    if (!(lambda >= 0.0) || lambda >= t - r)
        throw std::domain_error(std::string(what) + ": requires 0 <= lambda < t-r");
}

}  // namespace

double eval_Kj(const KernelSum& ks, double lambda, double t, double r, const QuadOptions& opts) {
    check_K_domain(lambda, t, r, "eval_Kj");
    const double hi = t + r;
    if (lambda >= hi - 1e-12 * hi) return 0.0;  // degenerate interval
    const double lo = std::max(lambda, std::abs(t - r));
    return integrate_kernel(ks, lambda, t, r, lo, hi, lo - (t - r), opts, "eval_Kj");
}

double eval_Ktildej(const KernelSum& ks, double lambda, double t, double r,
                    const QuadOptions& opts) {
    check_Ktilde_domain(lambda, t, r, "eval_Ktildej");
    return integrate_kernel(ks, lambda, t, r, t - r, t + r, (t - r) - lambda, opts,
                            "eval_Ktildej");
}

double eval_dr_Kj(const KernelSum& ks, double lambda, double t, double r,
                  const QuadOptions& opts) {
    if (ks.j > ks.m - 1)
        throw std::domain_error("eval_dr_Kj: analytic r-derivative needs level <= m-1");
    check_K_domain(lambda, t, r, "eval_dr_Kj");
    const double hi = t + r;
    if (lambda >= hi - 1e-12 * hi) return 0.0;  // degenerate-zero case
    // The moving upper limit contributes H_j(t+r)/sqrt(...), which vanishes
    // identically: every level <= m-1 term has pow_quad >= 1/2.
    const double lo = std::max(lambda, std::abs(t - r));
    return integrate_kernel(cached_dr_sum(ks), lambda, t, r, lo, hi, lo - (t - r), opts,
                            "eval_dr_Kj");
}

double eval_dr_Ktildej(const KernelSum& ks, double lambda, double t, double r,
                       const QuadOptions& opts) {
    if (ks.j > ks.m - 1)
        throw std::domain_error("eval_dr_Ktildej: analytic r-derivative needs level <= m-1");
    check_Ktilde_domain(lambda, t, r, "eval_dr_Ktildej");
    // Both limits move with r but H_j vanishes at rho = t -+ r for level <= m-1.
    return integrate_kernel(cached_dr_sum(ks), lambda, t, r, t - r, t + r, (t - r) - lambda,
                            opts, "eval_dr_Ktildej");
}

double eval_dlambda_Kj(const KernelSum& ks, double lambda, double t, double r,
                       const QuadOptions& opts) {
    if (ks.j > ks.m - 1)
        throw std::domain_error("eval_dlambda_Kj: analytic lambda-derivative needs level <= m-1");
    check_K_domain(lambda, t, r, "eval_dlambda_Kj");
    const double hi = t + r;
    if (lambda >= hi - 1e-12 * hi) return 0.0;
    const double lo = std::max(lambda, std::abs(t - r));
    return lambda * integrate_kernel(cached_dlambda_sum(ks), lambda, t, r, lo, hi,
                                     lo - (t - r), opts, "eval_dlambda_Kj");
}

}  // namespace scalewave
