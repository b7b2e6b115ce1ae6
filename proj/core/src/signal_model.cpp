#include <gridless2d/signal_model.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <gridless2d/rng.hpp>

namespace gridless2d
{

double wrap01(double f) noexcept
{
    double r = f - std::floor(f);
    // floor can round r up to exactly 1 for tiny negative inputs
    return r >= 1.0 ? 0.0 : r;
}

ObservationMask::ObservationMask(SceneDims dims, std::vector<std::pair<int, int>> observed)
    : m_dims(dims), m_observed(std::move(observed))
{
    m_dims.validate();
    if (m_observed.empty())
    {
        throw ContractError("observation mask must contain at least one entry");
    }
    for (const auto& [n, m] : m_observed)
    {
        if (n < 0 || n >= dims.N || m < 0 || m >= dims.M)
        {
            throw DimensionError("mask entry (" + std::to_string(n) + "," + std::to_string(m) +
                                 ") outside " + std::to_string(dims.N) + "x" +
                                 std::to_string(dims.M) + " grid");
        }
    }
    std::sort(m_observed.begin(), m_observed.end());
    if (std::adjacent_find(m_observed.begin(), m_observed.end()) != m_observed.end())
    {
        throw ContractError("observation mask contains duplicate entries");
    }
}

ObservationMask ObservationMask::full(SceneDims dims)
{
    std::vector<std::pair<int, int>> all;
    all.reserve(static_cast<std::size_t>(dims.size()));
    for (int n = 0; n < dims.N; ++n)
        for (int m = 0; m < dims.M; ++m)
            all.emplace_back(n, m);
    return ObservationMask(dims, std::move(all));
}

std::vector<int> ObservationMask::flat_indices() const
{
    std::vector<int> idx;
    idx.reserve(m_observed.size());
    for (const auto& [n, m] : m_observed)
        idx.push_back(m_dims.index(n, m));
    return idx;
}

bool ObservationMask::contains(int n, int m) const
{
    return std::binary_search(m_observed.begin(), m_observed.end(), std::pair{n, m});
}

void RadarParams::validate() const
{
    if (!(f0 > 0.0) || !(delta_f > 0.0) || !(delta_theta > 0.0) || !(c > 0.0))
    {
        throw ContractError("radar params require f0, delta_f, delta_theta, c > 0");
    }
}

CVector atom_1d(double f, int len)
{
    if (len < 1)
    {
        throw ContractError("atom length must be positive");
    }
    const double fr = wrap01(f);
    CVector a(len);
    for (int n = 0; n < len; ++n)
    {
        // reduce the phase in cycles first so large n keeps full precision
        const double cycles = fr * n - std::floor(fr * n);
        a[n] = std::polar(1.0, 2.0 * std::numbers::pi * cycles);
    }
    return a;
}

DataVector atom_2d(double fx, double fy, SceneDims dims)
{
    dims.validate();
    const CVector ax = atom_1d(fx, dims.N);
    const CVector ay = atom_1d(fy, dims.M);
    DataVector c(dims.size());
    for (int n = 0; n < dims.N; ++n)
        c.segment(n * dims.M, dims.M) = ax[n] * ay;
    return c;
}

DataMatrix synthesize(const ScattererSet& scene, SceneDims dims)
{
    dims.validate();
    if (scene.empty())
    {
        throw ContractError("cannot synthesize an empty scene");
    }
    DataMatrix S = DataMatrix::Zero(dims.N, dims.M);
    for (const auto& p : scene)
    {
        S.noalias() += p.amp * atom_1d(p.fx, dims.N) * atom_1d(p.fy, dims.M).transpose();
    }
    return S;
}

DataVector vectorize(const DataMatrix& S)
{
    DataVector s(S.size());
    const auto M = S.cols();
    for (Eigen::Index n = 0; n < S.rows(); ++n)
        for (Eigen::Index m = 0; m < M; ++m)
            s[n * M + m] = S(n, m);
    return s;
}

DataMatrix unvectorize(const DataVector& s, SceneDims dims)
{
    if (s.size() != dims.size())
    {
        throw DimensionError("data vector of length " + std::to_string(s.size()) +
                             " does not match " + std::to_string(dims.N) + "x" +
                             std::to_string(dims.M));
    }
    DataMatrix S(dims.N, dims.M);
    for (int n = 0; n < dims.N; ++n)
        for (int m = 0; m < dims.M; ++m)
            S(n, m) = s[dims.index(n, m)];
    return S;
}

std::vector<Observation> apply_mask(const DataMatrix& S, const ObservationMask& mask)
{
    const SceneDims d = mask.dims();
    if (S.rows() != d.N || S.cols() != d.M)
    {
        throw DimensionError("mask dims do not match data matrix");
    }
    std::vector<Observation> out;
    out.reserve(mask.count());
    for (const auto& [n, m] : mask.observed())
        out.push_back({n, m, S(n, m)});
    return out;
}

ObservationMask random_mask(SceneDims dims, int count, std::uint64_t seed)
{
    dims.validate();
    if (count < 1 || count > dims.size())
    {
        throw ContractError("sample count " + std::to_string(count) + " outside [1, " +
                            std::to_string(dims.size()) + "]");
    }
    std::vector<int> perm(static_cast<std::size_t>(dims.size()));
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    // partial Fisher-Yates: the first `count` slots are a uniform subset
    for (int i = 0; i < count; ++i)
    {
        const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(dims.size() - i)));
        std::swap(perm[i], perm[j]);
    }
    std::vector<std::pair<int, int>> observed;
    observed.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        observed.emplace_back(perm[i] / dims.M, perm[i] % dims.M);
    return ObservationMask(dims, std::move(observed));
}

std::pair<double, double> scene_to_frequencies(double x, double y, const RadarParams& params)
{
    params.validate();
    const double fx = 2.0 * params.f0 * params.delta_theta / params.c * x;
    const double fy = 2.0 * params.delta_f / params.c * y;
    return {wrap01(fx), wrap01(fy)};
}

} // namespace gridless2d
