#pragma once

#include <optional>

#include "ccdim/retraction.hpp"

namespace ccdim {

// Signed l1-unit vector plus a consistent witness concept.
struct RealizableDistribution {
    Vec mu;
    Concept witness;

    void validate(int n) const;
};

// Population loss Pr_{(x,b)~mu}[h(x) != b] and the algebraic form
// (1/2)||mu - |mu| h||_1; the two agree exactly.
Rat loss(const Vec& mu, const Concept& h);
Rat loss_l1_form(const Vec& mu, const Concept& h);

RealizableDistribution random_realizable(const ConceptClass& c, CounterRng& rng);

struct Sample {
    std::vector<std::pair<int, int>> items;  // (domain index, +-1 label)
    int n = 0;
};

Sample draw_sample(const RealizableDistribution& d, int n, CounterRng& rng);
RealizableDistribution empirical_estimate(const Sample& s, const RealizableDistribution& d,
                                          int domain_size);

// Smallest n with Pr[||mu - mu_hat||_1 >= min(eps/2, beta)] <= delta by the
// l1 concentration union bound with k = 2|X| outcomes.
long required_sample_size(const Rat& eps, const Rat& beta, const Rat& delta, int domain_size);

// The cover-driven learning rule: the closed sd-star shrinkage of the
// order-VCdim star cover, pulled through the retraction (or through the
// boundary homeomorphism for the full cube).
class LearnerCover {
  public:
    static LearnerCover build(const ConceptClass& e, const Rat& eps0, int max_grid_exponent = 9);

    const ConceptClass& cls() const { return e_; }
    int order_bound() const;      // cover dimension = VCdim (or |X|-1 for the cube)
    Rat rounding_radius() const;  // structural grid radius
    const Rat& eps0() const { return eps0_; }

    // f(mu) in cubical coordinates.
    Vec map_to_gamma(const Vec& mu) const;
    // Labels of the carrier of f(mu): at most order_bound()+1 hypotheses, each
    // of exact loss < eps0/2 at mu.
    std::vector<Concept> canonical_list(const Vec& mu) const;
    // Deterministic output: lowest class index among the top-tier labels.
    Concept output(const Vec& mu_hat) const;

    const GridStarCover& grid() const;
    bool is_cube_path() const { return !retraction_.has_value(); }

  private:
    LearnerCover(ConceptClass e, Rat eps0);
    ConceptClass e_;
    Rat eps0_;
    std::optional<Retraction> retraction_;
    std::optional<GridStarCover> boundary_;
};

struct TrialRecord {
    RealizableDistribution dist;
    std::vector<Concept> canonical;     // the deterministic list for this mu
    std::vector<Rat> canonical_losses;  // exact losses of the list entries
    std::map<uint32_t, int> output_counts;
    int out_of_list = 0;         // runs whose output left the canonical list
    int beta_disagreements = 0;  // runs with ||f(mu_hat)-f(mu)||_1 >= beta
    int agree_but_out = 0;       // beta-agreeing runs outside the list (always 0)
    Rat max_output_loss = Rat(0);
    bool triangle_ok = true;  // loss_mu <= loss_muhat + ||mu-muhat||_1, each run
};

struct TrialReport {
    long sample_size = 0;
    int order_bound = 0;
    Rat beta;
    std::vector<TrialRecord> trials;
    int max_list_size = 0;          // max distinct outputs over trials
    int max_canonical_size = 0;
    Rat max_canonical_loss = Rat(0);
    Rat max_out_of_list_freq = Rat(0);
    int loss_violations = 0;  // canonical entries with loss > eps
    bool determinism_checked = false;
};

TrialReport run_experiment(const ConceptClass& e, const Rat& eps, const Rat& delta, int trials,
                           int runs, uint64_t seed, bool calibrate = false);

// Statistical reconstruction of the cover {V_h} induced by a learning rule:
// frequency estimates on a grid of distributions with a Hoeffding margin.
struct EstimatedCoverPoint {
    Vec mu;
    std::vector<Concept> members;  // hypotheses passing the frequency + loss test
    int distinct_outputs = 0;
};
struct EstimatedCover {
    std::vector<EstimatedCoverPoint> points;
    int witness_order = 0;  // max memberships - 1
    int max_distinct = 0;
    Rat margin;
};

EstimatedCover learner_cover_estimate(const LearnerCover& learner, const std::vector<RealizableDistribution>& grid,
                                      const Rat& eps, const Rat& delta, int list_size, long n,
                                      int reps, uint64_t seed);

}  // namespace ccdim
