#include "uavnoma/mgdist.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "uavnoma/channel.hpp"

namespace uavnoma {

namespace {

// Poisson weight e^{-x} x^j / j!
double pw(double x, int j)
{
    if (x == 0.0) return j == 0 ? 1.0 : 0.0;
    if (std::isinf(x)) return 0.0;
    return std::exp(-x + j * std::log(x) - std::lgamma(j + 1.0));
}

double binom(int n, int k)
{
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Q(n, x) for every n in [1, nmax], filled from a single pw table.
void fill_q(double x, int nmax, std::vector<double>& out)
{
    out.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
    double acc = 0.0;
    for (int n = 1; n <= nmax; ++n) {
        acc += pw(x, n - 1);
        out[static_cast<std::size_t>(n)] = std::min(1.0, acc);
    }
}

void check_nonnegative(double x, const char* what)
{
    if (x < 0.0 || std::isnan(x)) throw std::domain_error(what);
}

} // namespace

MGDist::MGDist(Eigen::ArrayXd w, Eigen::ArrayXd s, Eigen::ArrayXi m)
    : weight(std::move(w)), scale(std::move(s)), shape(std::move(m))
{
    if (weight.size() == 0 || weight.size() != scale.size() || weight.size() != shape.size())
        throw std::invalid_argument("MGDist: component arrays must be non-empty and equal length");
    if ((weight < 0.0).any() || !weight.allFinite())
        throw std::invalid_argument("MGDist: weights must be finite and nonnegative");
    if (std::abs(weight.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("MGDist: weights must sum to one");
    if (!(scale > 0.0).all() || !scale.allFinite())
        throw std::invalid_argument("MGDist: scales must be finite and positive");
    if ((shape < 1).any()) throw std::invalid_argument("MGDist: shapes must be >= 1");
}

MGDist MGDist::gamma(int shape, double scale)
{
    return MGDist(Eigen::ArrayXd::Ones(1), Eigen::ArrayXd::Constant(1, scale),
                  Eigen::ArrayXi::Constant(1, shape));
}

double MGDist::mean() const
{
    return (weight * shape.cast<double>() * scale).sum();
}

double mg_pdf(const MGDist& d, double x)
{
    check_nonnegative(x, "mg_pdf: negative argument");
    double acc = 0.0;
    for (Eigen::Index k = 0; k < d.size(); ++k) {
        const int mu = d.shape(k);
        const double om = d.scale(k);
        if (x == 0.0) {
            if (mu == 1) acc += d.weight(k) / om;
            continue;
        }
        acc += d.weight(k)
            * std::exp((mu - 1) * std::log(x) - x / om - std::lgamma(mu) - mu * std::log(om));
    }
    return acc;
}

double mg_cdf(const MGDist& d, double x)
{
    check_nonnegative(x, "mg_cdf: negative argument");
    if (std::isinf(x)) return 1.0;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < d.size(); ++k)
        acc += d.weight(k) * gamma_p_int(d.shape(k), x / d.scale(k));
    return std::clamp(acc, 0.0, 1.0);
}

double mg_sf(const MGDist& d, double x)
{
    check_nonnegative(x, "mg_sf: negative argument");
    double acc = 0.0;
    for (Eigen::Index k = 0; k < d.size(); ++k)
        acc += d.weight(k) * gamma_q_int(d.shape(k), x / d.scale(k));
    return std::clamp(acc, 0.0, 1.0);
}

double gamma_q_int(int n, double x)
{
    if (n < 1) throw std::domain_error("gamma_q_int: n must be >= 1");
    check_nonnegative(x, "gamma_q_int: negative argument");
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += pw(x, j);
    return std::min(1.0, acc);
}

double gamma_p_int(int n, double x)
{
    if (n < 1) throw std::domain_error("gamma_p_int: n must be >= 1");
    check_nonnegative(x, "gamma_p_int: negative argument");
    if (x >= n) return 1.0 - gamma_q_int(n, x);
    // tail of the Poisson series avoids cancellation near zero
    double term = pw(x, n);
    double acc = 0.0;
    for (int j = n; term > 0.0; ++j) {
        acc += term;
        if (term < acc * 1e-17) break;
        term *= x / (j + 1);
    }
    return std::min(1.0, acc);
}

double upper_gamma_int(int n, double x)
{
    return std::exp(std::lgamma(n)) * gamma_q_int(n, x);
}

double log_upper_gamma_int(int n, double x)
{
    if (n < 1) throw std::domain_error("log_upper_gamma_int: n must be >= 1");
    check_nonnegative(x, "log_upper_gamma_int: negative argument");
    if (x == 0.0) return std::lgamma(n);
    // log-sum-exp over log(x^k / k!)
    double hi = -std::numeric_limits<double>::infinity();
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        t[static_cast<std::size_t>(k)] = k * std::log(x) - std::lgamma(k + 1.0);
        hi = std::max(hi, t[static_cast<std::size_t>(k)]);
    }
    double s = 0.0;
    for (double v : t) s += std::exp(v - hi);
    return std::lgamma(n) - x + hi + std::log(s);
}

MGDist from_g2g(const ShadowedRicianParams& sr, double pathloss_linear)
{
    sr.validate();
    if (!(pathloss_linear > 0.0)) throw std::invalid_argument("from_g2g: path loss must be > 0");
    const double rate = sr.beta() - sr.delta();
    Eigen::ArrayXd w(sr.m), s(sr.m);
    Eigen::ArrayXi m(sr.m);
    for (int l = 0; l < sr.m; ++l) {
        w(l) = sr.alpha() * sr.zeta(l) / std::pow(rate, l + 1);
        s(l) = pathloss_linear / rate;
        m(l) = l + 1;
    }
    const double total = w.sum();
    if (std::abs(total - 1.0) > 1e-6)
        std::clog << "from_g2g: renormalizing weights by " << total << '\n';
    return MGDist(w / total, s, m);
}

MGDist from_a2g(const A2GLinkParams& link, double d)
{
    link.validate();
    if (!(d > 0.0)) throw std::invalid_argument("from_a2g: distance must be > 0");
    const double fs = free_space_gain(d, link.carrier_freq_hz);
    const double los_scale = fs / db_to_linear(link.eta_los_db) / link.m;
    const double nlos_scale = fs / db_to_linear(link.eta_nlos_db);
    if (link.p_los >= 1.0) return MGDist::gamma(link.m, los_scale);
    if (link.p_los <= 0.0) return MGDist::exponential(nlos_scale);
    Eigen::ArrayXd w(2), s(2);
    Eigen::ArrayXi m(2);
    w << link.p_los, 1.0 - link.p_los;
    s << los_scale, nlos_scale;
    m << link.m, 1;
    return MGDist(w, s, m);
}

MGDist from_residual(const ResidualParams& res)
{
    res.validate();
    if (res.xi == 0.0) throw std::domain_error("from_residual: xi == 0 is a point mass at zero");
    return MGDist::exponential(res.xi * res.mean_gain);
}

void ExceedanceSpec::validate() const
{
    if (p.size() != q.size()) throw std::invalid_argument("ExceedanceSpec: p and q differ in length");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0.0) || !std::isfinite(p[i]) || !(q[i] >= 0.0) || !std::isfinite(q[i]))
            throw std::invalid_argument("ExceedanceSpec: p, q must be finite and nonnegative");
    }
    if (!(w >= 0.0)) throw std::invalid_argument("ExceedanceSpec: w must be nonnegative");
}

double exceed_I0(const MGDist& d0, double w0)
{
    if (!(w0 >= 0.0)) throw std::domain_error("exceed_I0: negative threshold");
    return mg_sf(d0, w0);
}

double exceed_I1(const MGDist& d0, const MGDist& d1, const ExceedanceSpec& spec)
{
    spec.validate();
    if (spec.depth() != 1) throw std::invalid_argument("exceed_I1: spec depth must be 1");
    const double p0 = spec.p[0], q0 = spec.q[0], w1 = spec.w;

    double total = 0.0;
    std::vector<double> qtab;
    for (Eigen::Index k0 = 0; k0 < d0.size(); ++k0) {
        const int kap0 = d0.shape(k0);
        const double lam0 = d0.scale(k0);
        // S[l] = sum_{i < kap0 - l} pw(q0/lam0, i)
        std::vector<double> S(static_cast<std::size_t>(kap0));
        {
            double acc = 0.0;
            for (int i = 0; i < kap0; ++i) {
                acc += pw(q0 / lam0, i);
                S[static_cast<std::size_t>(kap0 - 1 - i)] = acc;
            }
        }
        const double u = p0 / lam0;
        for (Eigen::Index k1 = 0; k1 < d1.size(); ++k1) {
            const int mu1 = d1.shape(k1);
            const double v = 1.0 / d1.scale(k1);
            const double lam = u + v;
            const double r = u / lam, s = v / lam;
            const int lmax = u > 0.0 ? kap0 - 1 : 0;
            fill_q(w1 * lam, lmax + mu1, qtab);
            double inner = 0.0;
            for (int l0 = 0; l0 <= lmax; ++l0) {
                const int kap1 = l0 + mu1;
                inner += S[static_cast<std::size_t>(l0)] * binom(kap1 - 1, l0)
                    * std::pow(r, l0) * qtab[static_cast<std::size_t>(kap1)];
            }
            total += d0.weight(k0) * d1.weight(k1) * std::pow(s, mu1) * inner;
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

double exceed_I2(const MGDist& d0, const MGDist& d1, const MGDist& d2,
                 const ExceedanceSpec& spec)
{
    spec.validate();
    if (spec.depth() != 2) throw std::invalid_argument("exceed_I2: spec depth must be 2");
    const double p0 = spec.p[0], q0 = spec.q[0];
    const double p1 = spec.p[1], q1 = spec.q[1], w2 = spec.w;

    auto tail_sums = [](double x, int kap) {
        std::vector<double> S(static_cast<std::size_t>(kap));
        double acc = 0.0;
        for (int i = 0; i < kap; ++i) {
            acc += pw(x, i);
            S[static_cast<std::size_t>(kap - 1 - i)] = acc;
        }
        return S;
    };

    double total = 0.0;
    std::vector<double> qtab;
    for (Eigen::Index k0 = 0; k0 < d0.size(); ++k0) {
        const int kap0 = d0.shape(k0);
        const double lam0 = d0.scale(k0);
        const auto S0 = tail_sums(q0 / lam0, kap0);
        const double u0 = p0 / lam0;
        const int l0max = u0 > 0.0 ? kap0 - 1 : 0;
        for (Eigen::Index k1 = 0; k1 < d1.size(); ++k1) {
            const int mu1 = d1.shape(k1);
            const double v1 = 1.0 / d1.scale(k1);
            const double lam1 = u0 + v1;
            const double r1 = u0 / lam1, s1 = v1 / lam1;
            for (int l0 = 0; l0 <= l0max; ++l0) {
                const int kap1 = l0 + mu1;
                const double c1 = d0.weight(k0) * d1.weight(k1) * S0[static_cast<std::size_t>(l0)]
                    * binom(kap1 - 1, l0) * std::pow(r1, l0) * std::pow(s1, mu1);
                if (c1 == 0.0) continue;
                // second link of the chain: scale 1/lam1, shape kap1
                const auto S1 = tail_sums(q1 * lam1, kap1);
                const double u1 = p1 * lam1;
                const int l1max = u1 > 0.0 ? kap1 - 1 : 0;
                for (Eigen::Index k2 = 0; k2 < d2.size(); ++k2) {
                    const int mu2 = d2.shape(k2);
                    const double v2 = 1.0 / d2.scale(k2);
                    const double lam2 = u1 + v2;
                    const double r2 = u1 / lam2, s2 = v2 / lam2;
                    fill_q(w2 * lam2, l1max + mu2, qtab);
                    double inner = 0.0;
                    for (int l1 = 0; l1 <= l1max; ++l1) {
                        const int kap2 = l1 + mu2;
                        inner += S1[static_cast<std::size_t>(l1)] * binom(kap2 - 1, l1)
                            * std::pow(r2, l1) * qtab[static_cast<std::size_t>(kap2)];
                    }
                    total += c1 * d2.weight(k2) * std::pow(s2, mu2) * inner;
                }
            }
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

double exceed_In(std::span<const MGDist> dists, const ExceedanceSpec& spec)
{
    spec.validate();
    if (dists.size() != spec.depth() + 1)
        throw std::invalid_argument("exceed_In: need depth + 1 distributions");

    // Each term is c * Q(kappa, t / Lambda) as a function of the next threshold t.
    struct Term { double c; int kappa; double Lambda; };
    std::vector<Term> terms;
    const MGDist& first = dists.front();
    for (Eigen::Index k = 0; k < first.size(); ++k)
        terms.push_back({first.weight(k), first.shape(k), first.scale(k)});

    for (std::size_t i = 0; i < spec.depth(); ++i) {
        const MGDist& next = dists[i + 1];
        std::vector<Term> out;
        for (const Term& t : terms) {
            const double x = spec.q[i] / t.Lambda;
            const double u = spec.p[i] / t.Lambda;
            for (Eigen::Index k = 0; k < next.size(); ++k) {
                const double v = 1.0 / next.scale(k);
                const double lam = u + v;
                const int mu = next.shape(k);
                double S = 0.0;
                for (int j = 0; j < t.kappa; ++j) S += pw(x, j);
                for (int l = 0; l < t.kappa; ++l) {
                    if (l > 0) {
                        if (u == 0.0) break;
                        S -= pw(x, t.kappa - l);
                    }
                    const double c = t.c * next.weight(k) * std::max(S, 0.0)
                        * binom(mu + l - 1, l) * std::pow(u / lam, l) * std::pow(v / lam, mu);
                    if (c > 0.0) out.push_back({c, mu + l, 1.0 / lam});
                }
            }
        }
        terms = std::move(out);
    }

    double total = 0.0;
    for (const Term& t : terms) total += t.c * gamma_q_int(t.kappa, spec.w / t.Lambda);
    return std::clamp(total, 0.0, 1.0);
}

} // namespace uavnoma
