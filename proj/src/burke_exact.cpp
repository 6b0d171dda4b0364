#include "dhlpp/burke_exact.hpp"

#include <stdexcept>

#include "dhlpp/geometry.hpp"
#include "dhlpp/passage.hpp"

namespace dhlpp::burke {

Rat ell_exact(const Rat& p, const Rat& u) {
    const Rat omu = one_minus(u);
    return (p * omu) / (u + p * omu);
}

namespace {

struct AtomLaw {
    Rat pw[2], pi[2], pj[2], pb[2];
};

AtomLaw make_law(const Rat& p, const Rat& u) {
    AtomLaw law;
    const Rat l = ell_exact(p, u);
    law.pw[1] = p;
    law.pw[0] = one_minus(p);
    law.pi[1] = u;
    law.pi[0] = one_minus(u);
    law.pj[1] = l;
    law.pj[0] = one_minus(l);
    law.pb[1] = p;
    law.pb[0] = one_minus(p);
    return law;
}

}  // namespace

SingleCellCheck single_cell_exact(const Rat& p, const Rat& u) {
    const AtomLaw law = make_law(p, u);
    std::array<Rat, 4> joint{};  // (I_out, J_out)
    for (int w = 0; w < 2; ++w)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const auto [io, jo] = passage::increment_step(w, j, i);
                joint[io * 2 + jo] += law.pw[w] * law.pi[i] * law.pj[j];
            }
    Rat pI = joint[2] + joint[3];
    Rat pJ = joint[1] + joint[3];
    SingleCellCheck out;
    out.marginals_ok = (pI == u) && (pJ == ell_exact(p, u));
    out.independence_ok = true;
    for (int io = 0; io < 2; ++io)
        for (int jo = 0; jo < 2; ++jo) {
            const Rat prod = (io ? pI : one_minus(pI)) * (jo ? pJ : one_minus(pJ));
            if (joint[io * 2 + jo] != prod) out.independence_ok = false;
        }
    return out;
}

FullCellCheck full_cell_exact(const Rat& p, const Rat& u) {
    const AtomLaw law = make_law(p, u);
    FullCellCheck out;
    for (int w = 0; w < 2; ++w)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int b = 0; b < 2; ++b) {
                    const auto [io, jo] = passage::increment_step(w, j, i);
                    int a;
                    if (i == 1 && j == 1)
                        a = 1;
                    else if (w == 0 && i == 0 && j == 0)
                        a = 0;
                    else
                        a = b;
                    out.joint[a * 4 + io * 2 + jo] += law.pw[w] * law.pi[i] * law.pj[j] * law.pb[b];
                }
    Rat pA, pI, pJ;
    for (int a = 0; a < 2; ++a)
        for (int io = 0; io < 2; ++io)
            for (int jo = 0; jo < 2; ++jo) {
                const Rat& q = out.joint[a * 4 + io * 2 + jo];
                if (a) pA += q;
                if (io) pI += q;
                if (jo) pJ += q;
            }
    out.marginals_ok = (pA == p) && (pI == u) && (pJ == ell_exact(p, u));
    out.independence_ok = true;
    for (int a = 0; a < 2; ++a)
        for (int io = 0; io < 2; ++io)
            for (int jo = 0; jo < 2; ++jo) {
                const Rat prod = (a ? pA : one_minus(pA)) * (io ? pI : one_minus(pI)) *
                                 (jo ? pJ : one_minus(pJ));
                if (out.joint[a * 4 + io * 2 + jo] != prod) out.independence_ok = false;
            }
    return out;
}

SmallSystemMoments enumerate_small_system(const Rat& p, const Rat& u, int m, int n) {
    if (m < 1 || n < 1 || m > 3 || n > 3)
        throw std::invalid_argument("enumerate_small_system: dims must be in [1,3]");
    const Rat l = ell_exact(p, u);
    const int bits = m + n + m * n;
    SmallSystemMoments mom;
    Rat EG, EG2, ES, EN, ESN, EW, EE, EWE, EF, EFup;
    for (long mask = 0; mask < (1L << bits); ++mask) {
        env::Environment e(m, n, p.to_double(), u.to_double(), l.to_double(),
                           env::EnvTag::BoundaryModel);
        auto& w = e.mutable_weights();
        Rat prob(1);
        int bit = 0;
        auto assign = [&](int i, int j, const Rat& q) {
            const int v = (mask >> bit) & 1;
            ++bit;
            w(i, j) = uint8_t(v);
            prob = prob * (v ? q : one_minus(q));
        };
        for (int i = 1; i <= m; ++i) assign(i, 0, u);
        for (int j = 1; j <= n; ++j) assign(0, j, l);
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= m; ++i) assign(i, j, p);

        const auto f = passage::compute_passage(e);
        const long long G = f.G(m, n), S = f.G(m, 0), W = f.G(0, n);
        const long long N = G - W, E = G - S;

        const auto path = geometry::downmost_maximal_path(f, e);
        const auto xp = geometry::exit_point(path);
        long long F = 0;
        for (int i = 1; i <= xp.xi_e1; ++i) F += 1 - w(i, 0);

        const auto et = env::transpose(e);
        const auto ft = passage::compute_passage(et);
        const auto patht = geometry::downmost_maximal_path(ft, et);
        const auto xpt = geometry::exit_point(patht);
        long long Fup = 0;
        for (int j = 1; j <= xpt.xi_e1; ++j) Fup += 1 - w(0, j);

        EG += prob * Rat(G);
        EG2 += prob * Rat(G * G);
        ES += prob * Rat(S);
        EN += prob * Rat(N);
        ESN += prob * Rat(S * N);
        EW += prob * Rat(W);
        EE += prob * Rat(E);
        EWE += prob * Rat(W * E);
        EF += prob * Rat(F);
        EFup += prob * Rat(Fup);
    }
    mom.var_G = EG2 - EG * EG;
    mom.cov_S_N = ESN - ES * EN;
    mom.cov_W_E = EWE - EW * EE;
    mom.exit_one_minus_w = EF;
    mom.exit_one_minus_w_up = EFup;
    return mom;
}

}  // namespace dhlpp::burke
