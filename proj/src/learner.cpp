#include "ccdim/learner.hpp"

#include <cmath>
#include <set>

namespace ccdim {

void RealizableDistribution::validate(int n) const {
    if (static_cast<int>(mu.size()) != n) throw std::invalid_argument("distribution size mismatch");
    if (l1_norm(mu) != 1) throw std::invalid_argument("distribution is not l1-unit");
    for (int x = 0; x < n; ++x)
        if (mu[x] != 0 && (mu[x] > 0) != (witness.value(x) > 0))
            throw std::invalid_argument("witness disagrees with the support labels");
}

Rat loss(const Vec& mu, const Concept& h) {
    Rat s = 0;
    for (size_t x = 0; x < mu.size(); ++x) {
        if (mu[x] == 0) continue;
        if ((mu[x] > 0) != (h.value(static_cast<int>(x)) > 0)) s += rat_abs(mu[x]);
    }
    return s;
}

Rat loss_l1_form(const Vec& mu, const Concept& h) {
    Rat s = 0;
    for (size_t x = 0; x < mu.size(); ++x) {
        Rat signed_mass = rat_abs(mu[x]) * h.value(static_cast<int>(x));
        s += rat_abs(mu[x] - signed_mass);
    }
    return s / 2;
}

RealizableDistribution random_realizable(const ConceptClass& c, CounterRng& rng) {
    RealizableDistribution d;
    d.witness = c[static_cast<int>(rng.below(c.size()))];
    int n = c.n();
    uint32_t support = 0;
    while (support == 0) support = static_cast<uint32_t>(rng.below(1u << n));
    std::vector<long> w(n, 0);
    long total = 0;
    for (int x = 0; x < n; ++x)
        if ((support >> x) & 1) {
            w[x] = 1 + static_cast<long>(rng.below(64));
            total += w[x];
        }
    d.mu.assign(n, Rat(0));
    for (int x = 0; x < n; ++x)
        if (w[x]) d.mu[x] = rat(d.witness.value(x) * w[x], total);
    return d;
}

Sample draw_sample(const RealizableDistribution& d, int n, CounterRng& rng) {
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    // Exact sampling over the common denominator of the masses.
    mpz_class den(1);
    for (const auto& m : d.mu)
        if (m != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m.get_den().get_mpz_t());
    if (!den.fits_ulong_p()) throw std::invalid_argument("sampling denominator too large");
    unsigned long total = den.get_ui();
    std::vector<std::pair<unsigned long, int>> cdf;  // (cumulative, domain index)
    unsigned long acc = 0;
    for (size_t x = 0; x < d.mu.size(); ++x) {
        if (d.mu[x] == 0) continue;
        Rat mass = rat_abs(d.mu[x]) * Rat(den);
        acc += static_cast<unsigned long>(mass.get_num().get_ui());
        cdf.push_back({acc, static_cast<int>(x)});
    }
    Sample s;
    s.n = n;
    s.items.reserve(n);
    for (int i = 0; i < n; ++i) {
        unsigned long r = rng.below(total);
        int x = 0;
        for (const auto& [cum, idx] : cdf)
            if (r < cum) {
                x = idx;
                break;
            }
        s.items.push_back({x, d.witness.value(x)});
    }
    return s;
}

RealizableDistribution empirical_estimate(const Sample& s, const RealizableDistribution& d,
                                          int domain_size) {
    std::vector<long> count(domain_size, 0);
    for (const auto& [x, label] : s.items) {
        (void)label;
        count[x] += 1;
    }
    RealizableDistribution out;
    out.witness = d.witness;
    out.mu.assign(domain_size, Rat(0));
    for (int x = 0; x < domain_size; ++x)
        if (count[x]) out.mu[x] = rat(d.witness.value(x) * count[x], s.n);
    return out;
}

long required_sample_size(const Rat& eps, const Rat& beta, const Rat& delta, int domain_size) {
    if (eps <= 0 || beta <= 0 || delta <= 0) throw std::invalid_argument("parameters must be positive");
    double tau = std::min(eps.get_d() / 2, beta.get_d());
    double k = 2.0 * domain_size;
    double n = 2.0 * (k * std::log(2.0) + std::log(1.0 / delta.get_d())) / (tau * tau);
    if (!(n < 1e12)) throw std::invalid_argument("required sample size out of range");
    return static_cast<long>(std::ceil(n - 1e-9));
}

LearnerCover::LearnerCover(ConceptClass e, Rat eps0) : e_(std::move(e)), eps0_(std::move(eps0)) {}

LearnerCover LearnerCover::build(const ConceptClass& e, const Rat& eps0, int max_grid_exponent) {
    LearnerCover lc(e, eps0);
    if (e.is_full_cube()) {
        lc.boundary_ = build_boundary_star_cover(e.n(), eps0, max_grid_exponent);
    } else {
        lc.retraction_.emplace(e, eps0, max_grid_exponent);
    }
    return lc;
}

const GridStarCover& LearnerCover::grid() const {
    return retraction_ ? retraction_->cover() : *boundary_;
}

int LearnerCover::order_bound() const { return grid().dim(); }

Rat LearnerCover::rounding_radius() const { return grid().rounding_radius(); }

Vec LearnerCover::map_to_gamma(const Vec& mu) const {
    if (retraction_) return unembed_point(retraction_->eval(mu));
    return unembed_point(mu);
}

std::vector<Concept> LearnerCover::canonical_list(const Vec& mu) const {
    return grid().open_memberships(map_to_gamma(mu));
}

Concept LearnerCover::output(const Vec& mu_hat) const {
    return grid().output_label(map_to_gamma(mu_hat));
}

TrialReport run_experiment(const ConceptClass& e, const Rat& eps, const Rat& delta, int trials,
                           int runs, uint64_t seed, bool calibrate) {
    std::optional<LearnerCover> built;
    try {
        built.emplace(LearnerCover::build(e, eps));
    } catch (const RetractionError& err) {
        throw RetractionError(std::string("learner pipeline, retraction stage: ") + err.what());
    } catch (const CoverMeshError& err) {
        throw CoverMeshError(std::string("learner pipeline, cover stage: ") + err.what());
    }
    LearnerCover& learner = *built;
    TrialReport rep;
    rep.order_bound = learner.order_bound();
    rep.beta = learner.rounding_radius();
    rep.sample_size = required_sample_size(eps, eps / 2, delta, e.n());
    if (calibrate) {
        // Calibration mode: empirically halve n while the pilot stays clean.
        long n = rep.sample_size;
        while (n > 32) {
            long half = n / 2;
            CounterRng pilot_rng(seed, 7000);
            auto d = random_realizable(e, pilot_rng);
            auto canon = learner.canonical_list(d.mu);
            std::set<uint32_t> canon_bits;
            for (const auto& c : canon) canon_bits.insert(c.bits);
            int bad = 0;
            for (int r = 0; r < 20; ++r) {
                CounterRng rr(seed, 7100 + r);
                auto s = draw_sample(d, static_cast<int>(half), rr);
                auto mh = empirical_estimate(s, d, e.n());
                if (!canon_bits.count(learner.output(mh.mu).bits)) ++bad;
            }
            if (bad == 0) n = half;
            else break;
        }
        rep.sample_size = n;
    }

    for (int t = 0; t < trials; ++t) {
        CounterRng trial_rng(seed, 1000 + static_cast<uint64_t>(t));
        TrialRecord rec;
        rec.dist = random_realizable(e, trial_rng);
        rec.dist.validate(e.n());
        rec.canonical = learner.canonical_list(rec.dist.mu);
        for (const auto& h : rec.canonical) rec.canonical_losses.push_back(loss(rec.dist.mu, h));
        Vec f_mu = learner.map_to_gamma(rec.dist.mu);
        std::set<uint32_t> canon_bits;
        for (const auto& h : rec.canonical) canon_bits.insert(h.bits);

        for (int r = 0; r < runs; ++r) {
            CounterRng run_rng(seed, (static_cast<uint64_t>(t) << 20) + 2000 + static_cast<uint64_t>(r));
            Sample s = draw_sample(rec.dist, static_cast<int>(rep.sample_size), run_rng);
            auto mu_hat = empirical_estimate(s, rec.dist, e.n());
            Concept h = learner.output(mu_hat.mu);
            rec.output_counts[h.bits] += 1;
            Rat lmu = loss(rec.dist.mu, h);
            if (lmu > rec.max_output_loss) rec.max_output_loss = lmu;
            bool in_list = canon_bits.count(h.bits) > 0;
            bool agree = l1_dist(learner.map_to_gamma(mu_hat.mu), f_mu) < rep.beta;
            if (!in_list) rec.out_of_list += 1;
            if (!agree) rec.beta_disagreements += 1;
            // Rounding consequence: beta-agreeing runs never leave the list.
            if (agree && !in_list) rec.agree_but_out += 1;
            // The proof's triangle bound, checked exactly per run.
            if (lmu > loss(mu_hat.mu, h) + l1_dist(rec.dist.mu, mu_hat.mu)) rec.triangle_ok = false;
        }
        rep.max_list_size = std::max(rep.max_list_size, static_cast<int>(rec.output_counts.size()));
        rep.max_canonical_size =
            std::max(rep.max_canonical_size, static_cast<int>(rec.canonical.size()));
        for (const auto& l : rec.canonical_losses) {
            if (l > rep.max_canonical_loss) rep.max_canonical_loss = l;
            if (l > eps) rep.loss_violations += 1;
        }
        Rat freq = rat(rec.out_of_list, runs);
        if (freq > rep.max_out_of_list_freq) rep.max_out_of_list_freq = freq;
        rep.trials.push_back(std::move(rec));
    }

    // Bit-for-bit determinism: replay the first trial and compare counts.
    if (trials > 0) {
        CounterRng trial_rng(seed, 1000);
        auto d2 = random_realizable(e, trial_rng);
        std::map<uint32_t, int> counts;
        for (int r = 0; r < runs; ++r) {
            CounterRng run_rng(seed, 2000 + static_cast<uint64_t>(r));
            Sample s = draw_sample(d2, static_cast<int>(rep.sample_size), run_rng);
            counts[learner.output(empirical_estimate(s, d2, e.n()).mu).bits] += 1;
        }
        rep.determinism_checked = counts == rep.trials[0].output_counts && d2.mu == rep.trials[0].dist.mu;
    }
    return rep;
}

EstimatedCover learner_cover_estimate(const LearnerCover& learner,
                                      const std::vector<RealizableDistribution>& grid,
                                      const Rat& eps, const Rat& delta, int list_size, long n,
                                      int reps, uint64_t seed) {
    EstimatedCover out;
    double margin = std::sqrt(std::log(2.0 / delta.get_d()) / (2.0 * reps));
    out.margin = rat(static_cast<long>(std::ceil(margin * 1000000)), 1000000);
    Rat threshold = (1 - 2 * delta) / list_size + out.margin;
    int point_idx = 0;
    for (const auto& d : grid) {
        EstimatedCoverPoint pt;
        pt.mu = d.mu;
        std::map<uint32_t, int> counts;
        for (int r = 0; r < reps; ++r) {
            CounterRng rng(seed, (static_cast<uint64_t>(point_idx) << 16) + r);
            Sample s = draw_sample(d, static_cast<int>(n), rng);
            auto mh = empirical_estimate(s, d, static_cast<int>(d.mu.size()));
            counts[learner.output(mh.mu).bits] += 1;
        }
        pt.distinct_outputs = static_cast<int>(counts.size());
        for (const auto& [bits, cnt] : counts) {
            Concept h{bits};
            if (rat(cnt, reps) > threshold && loss(d.mu, h) < 2 * eps) pt.members.push_back(h);
        }
        out.max_distinct = std::max(out.max_distinct, pt.distinct_outputs);
        out.witness_order =
            std::max(out.witness_order, static_cast<int>(pt.members.size()) - 1);
        out.points.push_back(std::move(pt));
        ++point_idx;
    }
    return out;
}

}  // namespace ccdim
