#include <gridless2d/sdp_rwtm.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>

#include <gridless2d/linalg.hpp>
#include <gridless2d/rng.hpp>

namespace gridless2d
{

namespace
{

std::uint64_t parse_uint(std::string_view text, std::string_view what)
{
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec]  = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
    {
        throw ContractError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

double max_abs_eig_gap(const RVector& values)
{
    if (values.size() == 0)
        return 0.0;
    return std::max(std::abs(values.minCoeff()), std::abs(values.maxCoeff()));
}

/// ADMM meets the block constraint only to its residual tolerance. Shift T by
/// the negative part of its spectrum (a change of u(0,0) alone) and raise t
/// to s^H T^-1 s, which makes [[t, s^H], [s, T]] PSD without touching s.
void restore_feasibility(double& t, const DataVector& s, ToeplitzCoeffs& u)
{
    const HermitianEig eig = hermitian_eig(assemble(u));
    const double lmax      = std::max(eig.values.maxCoeff(), 0.0);
    const double floor     = 1e-12 * std::max(lmax, s.norm());
    if (!(floor > 0.0))
        return;
    const double shift = std::max(0.0, -eig.values.minCoeff()) + floor;
    u.set(0, 0, u(0, 0) + shift);
    const CVector proj = eig.vectors.adjoint() * s;
    double t_min       = 0.0;
    for (Eigen::Index k = 0; k < proj.size(); ++k)
        t_min += std::norm(proj[k]) / (eig.values[k] + shift);
    t = std::max(t, t_min);
}

} // namespace

WeightInit WeightInit::parse(std::string_view text)
{
    WeightInit w;
    if (text == "identity")
    {
        w.kind = Kind::identity;
    }
    else if (text.starts_with("center:"))
    {
        w.kind = Kind::center_ones;
        w.size = static_cast<int>(parse_uint(text.substr(7), "center size"));
        if (w.size < 1)
            throw ContractError("center size must be positive");
    }
    else if (text.starts_with("random:"))
    {
        w.kind = Kind::random;
        w.seed = parse_uint(text.substr(7), "random seed");
    }
    else
    {
        throw ContractError("unknown weight init '" + std::string(text) +
                            "' (expected identity, center:SIZE or random:SEED)");
    }
    return w;
}

std::string WeightInit::to_string() const
{
    switch (kind)
    {
    case Kind::identity:
        return "identity";
    case Kind::center_ones:
        return "center:" + std::to_string(size);
    case Kind::random:
        return "random:" + std::to_string(seed);
    }
    return "identity";
}

void SolverConfig::validate() const
{
    if (!(rho > 0.0) || max_inner_iter < 1 || !(eps_abs > 0.0) || !(eps_rel > 0.0) ||
        max_outer_iter < 0 || !(outer_tol > 0.0) || !(mu0_scale > 0.0) || !(mu_min_scale > 0.0) ||
        adaptive_interval < 1)
    {
        throw ContractError("solver config values must be positive");
    }
    if (!(mu_decay > 0.0 && mu_decay < 1.0))
    {
        throw ContractError("mu_decay must lie in (0, 1)");
    }
}

CMatrix lift(double t, const DataVector& s, const CMatrix& T)
{
    const auto n = s.size();
    CMatrix Q(n + 1, n + 1);
    Q(0, 0)                    = t;
    Q.block(1, 0, n, 1)        = s;
    Q.block(0, 1, 1, n)        = s.adjoint();
    Q.bottomRightCorner(n, n) = T;
    return Q;
}

PrimalIterate primal_update(const CMatrix& B, SceneDims dims, const std::vector<int>& observed,
                            const CVector& values, const CMatrix& weight_adjoint, double rho)
{
    const int NM = dims.size();
    PrimalIterate out;
    out.t = std::max(0.0, B(0, 0).real() - 1.0 / rho);

    out.s = 0.5 * (B.block(1, 0, NM, 1) + B.block(0, 1, 1, NM).adjoint());
    for (std::size_t k = 0; k < observed.size(); ++k)
        out.s[observed[k]] = values[static_cast<Eigen::Index>(k)];

    const DiagonalClassTable table(dims);
    CMatrix G = adjoint(B.bottomRightCorner(NM, NM), dims) - weight_adjoint / rho;
    G.array() /= table.counts().cast<double>().array().cast<cplx>();
    out.u = ToeplitzCoeffs::symmetrized(dims, std::move(G));
    return out;
}

WeightedTraceSolver::WeightedTraceSolver(const std::vector<Observation>& obs,
                                         const ObservationMask& mask, SolverConfig cfg)
    : m_dims(mask.dims()), m_cfg(cfg), m_observed(mask.flat_indices())
{
    m_cfg.validate();
    if (obs.size() != mask.count())
    {
        throw DimensionError("observation count does not match mask");
    }
    // apply_mask emits observations in mask order; accept any order that
    // covers the mask exactly
    std::vector<std::pair<int, cplx>> keyed;
    keyed.reserve(obs.size());
    for (const auto& o : obs)
    {
        if (!mask.contains(o.n, o.m))
            throw DimensionError("observation outside the mask");
        keyed.emplace_back(m_dims.index(o.n, o.m), o.value);
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    m_values.resize(static_cast<Eigen::Index>(keyed.size()));
    for (std::size_t k = 0; k < keyed.size(); ++k)
    {
        if (keyed[k].first != m_observed[k])
            throw DimensionError("observations do not cover the mask");
        m_values[static_cast<Eigen::Index>(k)] = keyed[k].second;
    }
    m_raw_values      = m_values;
    const double peak = m_values.cwiseAbs().maxCoeff();
    m_data_scale      = peak > 0.0 ? peak : 1.0;
    m_values /= m_data_scale;

    const int n = m_dims.size() + 1;
    m_Z         = CMatrix::Zero(n, n);
    m_L         = CMatrix::Zero(n, n);
    DataVector s0 = DataVector::Zero(m_dims.size());
    for (std::size_t k = 0; k < m_observed.size(); ++k)
        s0[m_observed[k]] = m_values[static_cast<Eigen::Index>(k)];
    m_Q = lift(0.0, s0, CMatrix::Zero(m_dims.size(), m_dims.size()));
    m_rho = m_cfg.rho;
}

WeightedTraceSolution WeightedTraceSolver::solve(const CMatrix& winv, int outer_index)
{
    const int NM = m_dims.size();
    if (winv.rows() != NM || winv.cols() != NM)
    {
        throw DimensionError("inverse weight must be NM x NM");
    }
    const CMatrix W = hermitian_part(winv);
    if ((winv - W).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, W.cwiseAbs().maxCoeff()))
    {
        throw ContractError("inverse weight must be Hermitian");
    }
    const RVector wev = hermitian_eig(W).values;
    if (wev.minCoeff() < -1e-10 * max_abs_eig_gap(wev))
    {
        throw ContractError("inverse weight must be positive semidefinite");
    }
    const double wscale = W.trace().real() / NM;
    if (!(wscale > 0.0))
    {
        throw ContractError("inverse weight must be nonzero");
    }
    const CMatrix Gw   = adjoint(W / wscale, m_dims);
    double& rho        = m_rho;
    const double tol_a = m_cfg.eps_abs * (NM + 1);

    WeightedTraceSolution out;
    PrimalIterate x;
    double primal = 0.0;
    double dual   = 0.0;
    int it        = 0;
    for (it = 1; it <= m_cfg.max_inner_iter; ++it)
    {
        m_Z = psd_projection(m_Q - m_L / rho, m_positive_count);
        const CMatrix B = hermitian_part(m_Z + m_L / rho);
        x               = primal_update(B, m_dims, m_observed, m_values, Gw, rho);
        CMatrix Qn      = lift(x.t, x.s, assemble(x.u));
        const CMatrix R = m_Z - Qn;
        m_L += rho * R;
        primal = R.norm();
        dual   = rho * (Qn - m_Q).norm();
        m_Q    = std::move(Qn);

        const double objective = x.t + coeff_inner(Gw, x.u);
        out.history.push_back({outer_index, it, primal, dual, objective});

        const double tol = tol_a + m_cfg.eps_rel * std::max(m_Z.norm(), m_Q.norm());
        if (primal < tol && dual < tol)
        {
            out.converged = true;
            break;
        }
        if (m_cfg.adaptive_rho && it % m_cfg.adaptive_interval == 0)
        {
            // L is the unscaled multiplier, so only rho itself changes
            if (primal > 10.0 * dual)
                rho *= 2.0;
            else if (dual > 10.0 * primal)
                rho /= 2.0;
        }
    }
    out.iterations      = std::min(it, m_cfg.max_inner_iter);
    out.primal_residual = primal;
    out.dual_residual   = dual;

    // undo the data and weight normalization
    const double root = std::sqrt(wscale);
    out.t             = m_data_scale * root * x.t;
    out.s             = m_data_scale * x.s;
    for (std::size_t k = 0; k < m_observed.size(); ++k)
        out.s[m_observed[k]] = m_raw_values[static_cast<Eigen::Index>(k)];
    out.u = ToeplitzCoeffs::symmetrized(m_dims, x.u.values() * (m_data_scale / root));
    restore_feasibility(out.t, out.s, out.u);
    out.objective = out.t + trace_weighted(out.u, W);
    return out;
}

WeightedTraceSolution solve_weighted_trace(const std::vector<Observation>& obs,
                                           const ObservationMask& mask, const CMatrix& winv,
                                           const SolverConfig& cfg)
{
    WeightedTraceSolver solver(obs, mask, cfg);
    return solver.solve(winv);
}

CMatrix initial_weight_inverse(const WeightInit& init, SceneDims dims)
{
    dims.validate();
    const int NM = dims.size();
    if (init.kind == WeightInit::Kind::identity)
    {
        return CMatrix::Identity(NM, NM);
    }

    CMatrix W0;
    if (init.kind == WeightInit::Kind::center_ones)
    {
        if (init.size > NM)
            throw ContractError("center block larger than the weight matrix");
        const int offset = (NM - init.size) / 2;
        W0                                                      = CMatrix::Zero(NM, NM);
        W0.block(offset, offset, init.size, init.size).setOnes();
    }
    else
    {
        Rng rng(init.seed);
        CMatrix A(NM, NM);
        for (Eigen::Index k = 0; k < A.cols(); ++k)
            for (Eigen::Index i = 0; i < A.rows(); ++i)
            {
                const double re = rng.normal();
                const double im = rng.normal();
                A(i, k)         = cplx(re, im) / std::sqrt(2.0);
            }
        W0 = hermitian_part(A * A.adjoint());
        W0 /= hermitian_eig(W0).values.maxCoeff();
    }

    const HermitianEig eig = hermitian_eig(W0);
    const double norm2     = max_abs_eig_gap(eig.values);
    const double reg       = 1e-3 * std::max(1.0, norm2);
    RVector inv(eig.values.size());
    for (Eigen::Index k = 0; k < inv.size(); ++k)
        inv[k] = 1.0 / (std::max(eig.values[k], 0.0) + reg);
    return hermitian_part(eig.vectors * inv.asDiagonal() * eig.vectors.adjoint());
}

namespace
{

void append_pass(RecoveryResult& res, WeightedTraceSolution&& sol, bool first)
{
    res.inner_iterations += sol.iterations;
    res.outer_iterations += 1;
    res.converged       = first ? sol.converged : (res.converged && sol.converged);
    res.primal_residual = sol.primal_residual;
    res.dual_residual   = sol.dual_residual;
    res.objectives.push_back(sol.objective);
    res.history.insert(res.history.end(), sol.history.begin(), sol.history.end());
    sol.history.clear();
    res.s_hat = sol.s;
    res.u_hat = sol.u;
    res.t_hat = sol.t;
    res.passes.push_back(std::move(sol));
}

} // namespace

RecoveryResult first_pass(const RecoveryResult& result)
{
    if (result.passes.empty())
        throw ContractError("recovery result has no passes");
    const WeightedTraceSolution& p = result.passes.front();
    RecoveryResult out;
    out.s_hat            = p.s;
    out.u_hat            = p.u;
    out.t_hat            = p.t;
    out.inner_iterations = p.iterations;
    out.outer_iterations = 1;
    out.converged        = p.converged;
    out.primal_residual  = p.primal_residual;
    out.dual_residual    = p.dual_residual;
    out.objectives       = {p.objective};
    for (const auto& r : result.history)
        if (r.outer_iter == 0)
            out.history.push_back(r);
    out.passes = {p};
    return out;
}

RecoveryResult anm_solve(const std::vector<Observation>& obs, const ObservationMask& mask,
                         const SolverConfig& cfg)
{
    WeightedTraceSolver solver(obs, mask, cfg);
    const int NM = mask.dims().size();
    RecoveryResult res;
    append_pass(res, solver.solve(CMatrix::Identity(NM, NM), 0), true);
    return res;
}

RecoveryResult rwtm_solve(const std::vector<Observation>& obs, const ObservationMask& mask,
                          const SolverConfig& cfg)
{
    WeightedTraceSolver solver(obs, mask, cfg);
    const SceneDims dims = mask.dims();
    CMatrix winv         = initial_weight_inverse(cfg.weight_init, dims);

    RecoveryResult res;
    double lambda0 = 0.0;
    for (int i = 0;; ++i)
    {
        ToeplitzCoeffs previous = res.u_hat;
        append_pass(res, solver.solve(winv, i), i == 0);

        const HermitianEig eig = hermitian_eig(assemble(res.u_hat));
        if (i == 0)
        {
            lambda0 = std::max(eig.values.maxCoeff(), 0.0);
        }
        if (!(lambda0 > 0.0))
        {
            break;  // zero data: nothing to reweight
        }
        const double mu = std::max(cfg.mu0_scale * lambda0 * std::pow(cfg.mu_decay, i),
                                   cfg.mu_min_scale * lambda0);
        res.mu.push_back(mu);

        RVector shifted = (eig.values.array().max(0.0) + mu).matrix();
        res.surrogate.push_back(res.t_hat + shifted.array().log().sum());

        if (i > 0)
        {
            const double base   = previous.norm();
            const double change = (res.u_hat.values() - previous.values()).norm();
            if (base > 0.0 && change / base < cfg.outer_tol)
                break;
        }
        if (i >= cfg.max_outer_iter)
            break;

        const RVector inv = shifted.cwiseInverse();
        winv              = hermitian_part(eig.vectors * inv.asDiagonal() * eig.vectors.adjoint());
    }
    return res;
}

} // namespace gridless2d
