#include "ccdim/certificate.hpp"

#include "ccdim/grid_cover.hpp"

namespace ccdim {

namespace {

// d_l1(embed(y), sigma_h) = 2 loss_{embed(y)}(h).
Rat embedded_loss_distance(const Vec& y, const Concept& h) {
    Rat miss = 0, norm = 0;
    for (size_t x = 0; x < y.size(); ++x) {
        norm += rat_abs(y[x]);
        if ((y[x] > 0 && h.value(static_cast<int>(x)) < 0) ||
            (y[x] < 0 && h.value(static_cast<int>(x)) > 0))
            miss += rat_abs(y[x]);
    }
    return 2 * miss / norm;
}

}  // namespace

LowerBoundCertificate lower_bound_certificate(const ConceptClass& e) {
    if (!e.is_extremal())
        throw std::invalid_argument("lower bound certificate requires an extremal class");
    int n = e.n();
    LowerBoundCertificate cert;
    cert.alpha = rat(1, n + 1);

    if (e.is_full_cube()) {
        // Take an arbitrary (VC-1)-cube; fix the last coordinate to +1.
        cert.cube = PartialConcept{1u << (n - 1), 1u << (n - 1)};
    } else {
        auto [d, witness_set] = e.max_strongly_shattered();
        uint32_t outside = e.full_mask() & ~witness_set;
        auto a = e.strong_shatter_witness(witness_set);
        cert.cube = PartialConcept{outside, a.value() & outside};
        if (!e.is_cube(cert.cube))
            throw std::logic_error("strong shattering witness is not a cube");
    }
    cert.dim = n - cert.cube.support_size();

    // For each face coordinate x and sign s, every point y of the face has
    // y_x = s; its normalization keeps |y'_x| >= 1/max-norm >= 1/|X| > alpha,
    // while every z in B_h with h(x) = -s has z_x * s <= 0, so
    // d(y', B_h) >= |y'_x|. The corner enumeration certifies the margins.
    uint32_t free = e.full_mask() & ~cert.cube.support;
    cert.face_margin = 1;
    for (int x = 0; x < n; ++x) {
        if (!((free >> x) & 1)) continue;
        for (int s = 0; s < 2; ++s) {
            // Corners of the face: all +-1 assignments of the other free coords.
            uint32_t others = free & ~(1u << x);
            Rat max_norm = 0;
            uint32_t sub = 0;
            for (;;) {
                Vec y(n, Rat(0));
                for (int t = 0; t < n; ++t) {
                    if (cert.cube.defined(t)) y[t] = Rat(cert.cube.value(t));
                    else if (t == x) y[t] = s ? Rat(1) : Rat(-1);
                    else if ((others >> t) & 1) y[t] = ((sub >> t) & 1) ? Rat(1) : Rat(-1);
                }
                Rat norm = l1_norm(y);
                if (norm > max_norm) max_norm = norm;
                // Exact distance spot check at this corner for every opposing h.
                for (uint32_t hb = 0; hb <= e.full_mask(); ++hb) {
                    Concept h{hb};
                    if ((h.value(x) > 0) == (s == 1)) continue;  // need h(x) = -s
                    Rat d = embedded_loss_distance(y, h);
                    if (d < rat(1, n)) {
                        cert.verified = false;
                        return cert;
                    }
                    ++cert.checks;
                }
                if (sub == others) break;
                sub = (sub - others) & others;
            }
            Rat margin = 1 / max_norm;
            if (margin <= cert.alpha) {
                cert.verified = false;
                return cert;
            }
            if (margin < cert.face_margin) cert.face_margin = margin;
        }
    }
    cert.verified = true;
    return cert;
}

DimensionVerdict certify_class(const ConceptClass& e) {
    DimensionVerdict v;
    v.extremal = e.is_extremal();
    if (!v.extremal)
        throw std::invalid_argument("certify requires an extremal class");
    v.full_cube = e.is_full_cube();
    v.vc = e.vc_dim();
    v.certificate = lower_bound_certificate(e);
    if (!v.certificate.verified)
        throw std::logic_error("lower bound certificate failed verification");
    int n = e.n();
    if (v.full_cube) {
        GridStarCover cover(e, boundary_cubes(n), 2);
        v.cover_order = cover.exact_order();
        v.scdim = n - 1;
    } else {
        GridStarCover cover(e, e.cube_partials(), 2);
        v.cover_order = cover.exact_order();
        v.scdim = v.vc;
    }
    if (v.certificate.dim != v.scdim)
        throw std::logic_error("certificate dimension disagrees with the strong shattering bound");
    v.lr = v.scdim + 1;
    return v;
}

}  // namespace ccdim
