// Command-line front end: generators, analysis, complex export, covers,
// retraction spot checks, certificates, learner experiments, property suite.
//
// Exit codes: 0 success, 1 verification/violation, 2 input error,
// 3 pipeline failure (collapse search stuck, mesh cap).
#include <cmath>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ccdim/certificate.hpp"
#include "ccdim/class_io.hpp"
#include "ccdim/covers.hpp"
#include "ccdim/generators.hpp"
#include "ccdim/learner.hpp"
#include "ccdim/verify.hpp"
#include "json.hpp"

using namespace ccdim;
using nlohmann::json;

namespace {

struct InputOpts {
    std::string class_file;
    std::string descriptor;
};

ConceptClass load_class(const InputOpts& in) {
    if (!in.class_file.empty()) return class_from_file(in.class_file);
    if (!in.descriptor.empty()) return generate_from_descriptor(in.descriptor);
    throw std::invalid_argument("provide --class FILE or --gen DESCRIPTOR");
}

void add_input_opts(CLI::App* cmd, InputOpts& in) {
    cmd->add_option("--class", in.class_file, "class file (JSON)");
    cmd->add_option("--gen", in.descriptor,
                    "generator descriptor (cube:N, thresholds:T, boxes:FILE, halfspaces:FILE, "
                    "downward:N:SEED, median:N:SEED)");
}

Rat opt_rat(const std::string& s, const char* what) {
    auto r = rat_parse(s);
    if (!r || *r <= 0) throw std::invalid_argument(std::string(what) + ": bad rational '" + s + "'");
    return *r;
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

json verdict_json(const DimensionVerdict& v, const ConceptClass& e) {
    json j;
    j["extremal"] = v.extremal;
    j["full_cube"] = v.full_cube;
    j["vc_dim"] = v.vc;
    j["scdim"] = v.scdim;
    j["lr"] = v.lr;
    j["cover_order"] = v.cover_order;
    j["certificate"] = {{"cube", partial_str(v.certificate.cube, e.n())},
                        {"dim", v.certificate.dim},
                        {"alpha", rat_str(v.certificate.alpha)},
                        {"face_margin", rat_str(v.certificate.face_margin)},
                        {"checks", v.certificate.checks},
                        {"verified", v.certificate.verified}};
    return j;
}

int cmd_analyze(const InputOpts& in, const std::string& out_path) {
    ConceptClass c = load_class(in);
    json j;
    j["domain"] = c.domain().labels;
    j["size"] = c.size();
    j["vc_dim"] = c.vc_dim();
    j["extremal"] = c.is_extremal();
    j["shattered_count"] = c.count_shattered();
    j["strongly_shattered_count"] = c.count_strongly_shattered();
    auto [msd, witness] = c.max_strongly_shattered();
    j["max_strongly_shattered"] = msd;
    std::vector<std::string> wl;
    for (int x = 0; x < c.n(); ++x)
        if ((witness >> x) & 1) wl.push_back(c.domain().labels[x]);
    j["max_strongly_shattered_witness"] = wl;
    std::cout << "|C| = " << c.size() << ", VC = " << c.vc_dim() << ", "
              << (c.is_extremal() ? "extremal" : "not extremal") << ", shattered = "
              << c.count_shattered() << ", strongly shattered = " << c.count_strongly_shattered()
              << "\n";
    if (c.is_extremal()) {
        auto v = certify_class(c);
        j["verdict"] = verdict_json(v, c);
        std::cout << "SCdim = " << v.scdim << ", LR = " << v.lr
                  << (v.full_cube ? " (full cube)" : "") << "\n";
    }
    write_out(out_path, j.dump(2));
    return 0;
}

int cmd_complex(const InputOpts& in, const std::string& kind, int level,
                const std::string& out_path, const std::string& off_path) {
    ConceptClass c = load_class(in);
    ChainComplex k = kind == "gamma" ? build_gamma1(c) : build_delta1(c);
    if (level <= 1) {
        write_out(out_path, chain_complex_to_json(k));
        if (!off_path.empty()) write_out(off_path, geo_complex_to_off(geo_of_chain_complex(k)));
    } else {
        GeoComplex g = geo_of_chain_complex(k);
        for (int l = 1; l < level; ++l) g = g.barycentric();
        write_out(out_path, geo_complex_to_json(g));
        if (!off_path.empty()) write_out(off_path, geo_complex_to_off(g));
    }
    std::cout << kind << " complex: " << k.verts().size() << " vertices, dim " << k.dim()
              << ", level " << level << "\n";
    return 0;
}

int cmd_cover(const InputOpts& in, const std::string& eps_s, bool order_only, int grid_exp,
              const std::string& out_path) {
    ConceptClass c = load_class(in);
    if (!c.is_extremal()) {
        std::cerr << "cover requires an extremal class\n";
        return 2;
    }
    Rat eps = opt_rat(eps_s, "--eps");
    json j;
    int order;
    std::string mode;
    auto element_summary = [&](const GridStarCover& g) {
        std::map<std::string, int> stars;
        for (const auto& v : g.all_vertices()) stars[concept_str(g.label_of(v), c.n())] += 1;
        json elems = json::array();
        for (const auto& [label, count] : stars)
            elems.push_back({{"label", label}, {"star_vertices", count}});
        return elems;
    };
    if (c.is_full_cube()) {
        GridStarCover audit(c, boundary_cubes(c.n()), 2);
        order = audit.exact_order();
        j["elements"] = element_summary(audit);
        mode = "boundary";
        if (!order_only) {
            auto cover = build_boundary_star_cover(c.n(), eps, grid_exp);
            j["grid_m"] = cover.m();
            j["containment"] = rat_str(cover.max_star_distance());
        }
    } else {
        GridStarCover audit(c, c.cube_partials(), 2);
        order = audit.exact_order();
        j["elements"] = element_summary(audit);
        mode = "star";
        if (!order_only) {
            auto cover = build_star_cover(c, eps, grid_exp);
            j["grid_m"] = cover.m();
            j["containment"] = rat_str(cover.max_star_distance());
        }
    }
    j["mode"] = mode;
    j["order"] = order;
    j["order_exact"] = true;
    j["vc_dim"] = c.vc_dim();
    j["eps"] = rat_str(eps);
    if (order_only) j["containment"] = "skipped";
    std::cout << "cover order = " << order << " (exact), VC = " << c.vc_dim() << "\n";
    if (!order_only)
        std::cout << "elements sit inside sigma_g^(" << j["containment"].get<std::string>()
                  << ") at grid m = " << j["grid_m"].get<int>() << "\n";
    write_out(out_path, j.dump(2));
    return 0;
}

int cmd_retract(const InputOpts& in, const std::string& eps0_s, int samples, uint64_t seed,
                const std::string& out_path, const std::string& trace_path) {
    ConceptClass c = load_class(in);
    Rat eps0 = opt_rat(eps0_s, "--eps0");
    Retraction f(c, eps0);
    auto g1 = build_gamma1(c);
    auto d1 = build_delta1(c);
    json j;
    j["eps0"] = rat_str(eps0);
    j["eps_cover"] = rat_str(f.eps_cover());
    j["eps_time"] = rat_str(f.eps_time());
    if (f.gamma0()) j["gamma0"] = rat_str(*f.gamma0());
    bool ok = true;
    for (const auto& h : g1.verts()) {
        Vec v = embed_point(g1.coord(h));
        if (f.eval(v) != v) ok = false;
    }
    j["identity_on_gamma_vertices"] = ok;
    CounterRng rng(seed, 300);
    int idempotent = 0, property1 = 0, order_ok = 0, containment_ok = 0;
    int max_order = 0;
    for (int i = 0; i < samples; ++i) {
        Vec mu = random_delta_point(d1, rng);
        Vec z = f.eval(mu);
        if (f.eval(z) == z) ++idempotent;
        if (f.property1_holds(mu)) ++property1;
        auto open = f.pullback_open(mu);
        max_order = std::max(max_order, static_cast<int>(open.size()) - 1);
        if (static_cast<int>(open.size()) <= c.vc_dim() + 1) ++order_ok;
        bool cont = true;
        for (const auto& g : open)
            if (dist_point_sigma(mu, PartialConcept{c.full_mask(), g.bits}, c.n()) >= eps0)
                cont = false;
        if (cont) ++containment_ok;
    }
    j["samples"] = samples;
    j["idempotent"] = idempotent;
    j["property1"] = property1;
    j["pullback_order_ok"] = order_ok;
    j["pullback_witness_order"] = max_order;
    j["containment_ok"] = containment_ok;
    bool pass = ok && idempotent == samples && property1 == samples && order_ok == samples &&
                containment_ok == samples;
    j["pass"] = pass;
    if (!trace_path.empty()) {
        std::vector<Retraction::TraceEntry> trace;
        Vec mu = random_delta_point(d1, rng);
        Vec img = f.eval_traced(mu, &trace);
        json t;
        t["mu"] = vec_str(mu);
        t["image"] = vec_str(img);
        t["steps"] = json::array();
        for (const auto& e : trace)
            t["steps"].push_back({{"w", partial_str(e.w, c.n())},
                                  {"alpha", rat_str(e.alpha)},
                                  {"cone_point", vec_str(e.cone_point)},
                                  {"image", vec_str(e.image)}});
        write_out(trace_path, t.dump(2));
    }
    std::cout << "retraction checks: identity " << (ok ? "ok" : "FAIL") << ", idempotent "
              << idempotent << "/" << samples << ", property1 " << property1 << "/" << samples
              << ", order<=VC " << order_ok << "/" << samples << ", containment "
              << containment_ok << "/" << samples << "\n";
    write_out(out_path, j.dump(2));
    return pass ? 0 : 1;
}

int cmd_certify(const InputOpts& in, const std::string& out_path) {
    ConceptClass c = load_class(in);
    if (!c.is_extremal()) {
        std::cerr << "certify requires an extremal class (is_extremal = false)\n";
        return 2;
    }
    auto v = certify_class(c);
    std::cout << "SCdim = " << v.scdim << ", LR = " << v.lr << " ("
              << (v.full_cube ? "full cube" : "extremal, != cube") << ")\n"
              << "lower bound certificate: cube " << partial_str(v.certificate.cube, c.n())
              << " of dim " << v.certificate.dim << ", alpha = " << rat_str(v.certificate.alpha)
              << ", margin = " << rat_str(v.certificate.face_margin) << ", checks = "
              << v.certificate.checks << "\n"
              << "cover order (upper bound object) = " << v.cover_order << "\n";
    write_out(out_path, verdict_json(v, c).dump(2));
    return 0;
}

int cmd_learn(const InputOpts& in, const std::string& eps_s, const std::string& delta_s,
              int trials, int runs, uint64_t seed, bool calibrate, const std::string& out_path) {
    ConceptClass c = load_class(in);
    Rat eps = opt_rat(eps_s, "--eps");
    Rat delta = opt_rat(delta_s, "--delta");
    auto rep = run_experiment(c, eps, delta, trials, runs, seed, calibrate);
    double tolerance = delta.get_d() + 3 * std::sqrt(delta.get_d() / runs);
    bool list_ok = rep.max_list_size <= rep.order_bound + 1;
    bool canonical_ok = rep.max_canonical_size <= rep.order_bound + 1;
    bool eps_ok = rep.loss_violations == 0;
    bool delta_ok = rep.max_out_of_list_freq.get_d() <= tolerance;
    bool agreement_ok = true;
    for (const auto& t : rep.trials)
        if (t.agree_but_out != 0) agreement_ok = false;
    json j;
    j["config"] = {{"eps", rat_str(eps)},   {"delta", rat_str(delta)}, {"trials", trials},
                   {"runs", runs},          {"seed", seed},            {"calibrate", calibrate},
                   {"sample_size", rep.sample_size}};
    j["order_bound"] = rep.order_bound;
    j["beta"] = rat_str(rep.beta);
    j["max_observed_list"] = rep.max_list_size;
    j["max_canonical_list"] = rep.max_canonical_size;
    j["max_canonical_loss"] = rat_str(rep.max_canonical_loss);
    j["max_out_of_list_freq"] = rat_str(rep.max_out_of_list_freq);
    j["determinism_checked"] = rep.determinism_checked;
    j["trials"] = json::array();
    for (const auto& t : rep.trials) {
        json tj;
        tj["mu"] = vec_str(t.dist.mu);
        tj["witness"] = concept_str(t.dist.witness, c.n());
        tj["canonical"] = json::array();
        for (size_t i = 0; i < t.canonical.size(); ++i)
            tj["canonical"].push_back({{"h", concept_str(t.canonical[i], c.n())},
                                       {"loss", rat_str(t.canonical_losses[i])}});
        json oc = json::object();
        for (const auto& [bits, count] : t.output_counts)
            oc[concept_str(Concept{bits}, c.n())] = count;
        tj["outputs"] = oc;
        tj["out_of_list"] = t.out_of_list;
        tj["beta_disagreements"] = t.beta_disagreements;
        tj["agree_but_out"] = t.agree_but_out;
        tj["max_output_loss"] = rat_str(t.max_output_loss);
        tj["triangle_ok"] = t.triangle_ok;
        j["trials"].push_back(tj);
    }
    j["verdicts"] = {{"list_ok", list_ok},
                     {"canonical_ok", canonical_ok},
                     {"eps_ok", eps_ok},
                     {"delta_ok", delta_ok},
                     {"agreement_ok", agreement_ok}};
    write_out(out_path, j.dump(2));
    std::cout << "n = " << rep.sample_size << ", order bound = " << rep.order_bound
              << ", max observed list = " << rep.max_list_size << ", max canonical loss = "
              << rat_str(rep.max_canonical_loss) << ", max out-of-list freq = "
              << rat_str(rep.max_out_of_list_freq) << "\n";
    bool pass = list_ok && canonical_ok && eps_ok && delta_ok && agreement_ok &&
                rep.determinism_checked;
    std::cout << (pass ? "PASS" : "VIOLATION") << "\n";
    return pass ? 0 : 1;
}

int cmd_verify(uint64_t seed, bool quick) {
    auto results = run_property_suite(seed, quick);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.pass) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"concept class dimension toolkit"};
    app.require_subcommand(1);

    InputOpts in;
    std::string out_path, off_path, trace_path;
    std::string kind = "delta", eps_s = "1/4", eps0_s = "1/4", delta_s = "1/20";
    std::string learn_eps_s = "1/20";
    int level = 1, grid_exp = 9, samples = 200, trials = 100, runs = 50;
    uint64_t seed = 42;
    bool order_only = false, quick = false, calibrate = false;

    auto* analyze = app.add_subcommand("analyze", "VC, extremality, shattering inventory");
    add_input_opts(analyze, in);
    analyze->add_option("--json", out_path);

    auto* complex = app.add_subcommand("complex", "export the simplicial/cubical complexes");
    add_input_opts(complex, in);
    complex->add_option("--kind", kind)->check(CLI::IsMember({"delta", "gamma"}));
    complex->add_option("--level", level);
    complex->add_option("--json", out_path);
    complex->add_option("--off", off_path);

    auto* cover = app.add_subcommand("cover", "order-VCdim star cover and order audit");
    add_input_opts(cover, in);
    cover->add_option("--eps", eps_s, "dilation bound for the containment check");
    cover->add_flag("--order-only", order_only, "skip the containment escalation");
    cover->add_option("--grid-exp", grid_exp, "max grid exponent");
    cover->add_option("--json", out_path);

    auto* retract = app.add_subcommand("retract", "build and spot-check the retraction");
    add_input_opts(retract, in);
    retract->add_option("--eps0", eps0_s);
    retract->add_option("--samples", samples);
    retract->add_option("--seed", seed);
    retract->add_option("--json", out_path);
    retract->add_option("--trace", trace_path);

    auto* certify = app.add_subcommand("certify", "SCdim/LR verdict with certificates");
    add_input_opts(certify, in);
    certify->add_option("--json", out_path);

    auto* learn = app.add_subcommand("learn", "run the list-replicable learner simulation");
    add_input_opts(learn, in);
    learn->add_option("--eps", learn_eps_s);
    learn->add_option("--delta", delta_s);
    learn->add_option("--trials", trials);
    learn->add_option("--runs", runs);
    learn->add_option("--seed", seed);
    learn->add_flag("--calibrate", calibrate);
    learn->add_option("--json", out_path);

    auto* verify = app.add_subcommand("verify", "run the full property suite");
    verify->add_option("--seed", seed);
    verify->add_flag("--quick", quick);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(in, out_path);
        if (app.got_subcommand(complex)) return cmd_complex(in, kind, level, out_path, off_path);
        if (app.got_subcommand(cover)) return cmd_cover(in, eps_s, order_only, grid_exp, out_path);
        if (app.got_subcommand(retract))
            return cmd_retract(in, eps0_s, samples, seed, out_path, trace_path);
        if (app.got_subcommand(certify)) return cmd_certify(in, out_path);
        if (app.got_subcommand(learn))
            return cmd_learn(in, learn_eps_s, delta_s, trials, runs, seed, calibrate, out_path);
        if (app.got_subcommand(verify)) return cmd_verify(seed, quick);
    } catch (const CoverMeshError& e) {
        std::cerr << "pipeline failure: " << e.what() << "\n";
        return 3;
    } catch (const RetractionError& e) {
        std::cerr << "pipeline failure: " << e.what() << "\n";
        return 3;
    } catch (const ShrinkageError& e) {
        std::cerr << "pipeline failure: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
