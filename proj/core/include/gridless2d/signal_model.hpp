#ifndef GRIDLESS2D_SIGNAL_MODEL_HPP
#define GRIDLESS2D_SIGNAL_MODEL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gridless2d/types.hpp>

namespace gridless2d
{

/// Reduce a frequency to the cyclic interval [0, 1).
double wrap01(double f) noexcept;

///
/// One scattering point: paired normalized cyclic frequencies (range, cross
/// range) and its complex reflection amplitude.
///
struct Scatterer
{
    double fx = 0.0;
    double fy = 0.0;
    cplx amp{1.0, 0.0};
};

/// Ordered list of scattering points; K is size().
using ScattererSet = std::vector<Scatterer>;

/// N x M measurement grid, entry (n, m) is the sample at angle n, pulse m.
using DataMatrix = CMatrix;

/// Row-major flattening of a DataMatrix: entry n*M + m.
using DataVector = CVector;

/// One surviving measurement of a masked grid.
struct Observation
{
    int n = 0;
    int m = 0;
    cplx value;
};

///
/// Set of observed (angle, pulse) index pairs. Indices are kept sorted by
/// flattened position and are unique.
///
class ObservationMask
{
public:
    ObservationMask(SceneDims dims, std::vector<std::pair<int, int>> observed);

    static ObservationMask full(SceneDims dims);

    SceneDims dims() const noexcept { return m_dims; }
    const std::vector<std::pair<int, int>>& observed() const noexcept { return m_observed; }
    std::size_t count() const noexcept { return m_observed.size(); }

    /// Flattened indices n*M + m, ascending.
    std::vector<int> flat_indices() const;

    bool contains(int n, int m) const;

    friend bool operator==(const ObservationMask&, const ObservationMask&) = default;

private:
    SceneDims m_dims;
    std::vector<std::pair<int, int>> m_observed;
};

/// Physical acquisition parameters used to map scene coordinates to
/// normalized frequencies.
struct RadarParams
{
    double f0          = 9.0e9;
    double delta_f     = 0.0;
    double delta_theta = 0.0;
    double c           = 299792458.0;
    double R0          = 0.0;

    void validate() const;
};

/// exp(j 2 pi f n) for n = 0 .. len-1.
CVector atom_1d(double f, int len);

/// atom_1d(fx, N) kron atom_1d(fy, M).
DataVector atom_2d(double fx, double fy, SceneDims dims);

/// S(n, m) = sum_k amp_k exp(j 2 pi (fx_k n + fy_k m)).
DataMatrix synthesize(const ScattererSet& scene, SceneDims dims);

DataVector vectorize(const DataMatrix& S);
DataMatrix unvectorize(const DataVector& s, SceneDims dims);

/// Entries of S on the mask, in mask order. Unobserved entries are omitted.
std::vector<Observation> apply_mask(const DataMatrix& S, const ObservationMask& mask);

/// Uniformly random subset of `count` grid positions.
ObservationMask random_mask(SceneDims dims, int count, std::uint64_t seed);

/// Physical (x, y) in meters to normalized cyclic (fx, fy).
std::pair<double, double> scene_to_frequencies(double x, double y, const RadarParams& params);

} // namespace gridless2d

#endif
