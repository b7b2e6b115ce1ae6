#ifndef GRIDLESS2D_TYPES_HPP
#define GRIDLESS2D_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace gridless2d
{

using cplx    = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Raised when array shapes disagree with the scene dimensions.
class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an argument violates an operation's precondition.
class ContractError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

///
/// Measurement grid size: N viewing angles (first level) by M pulses per
/// burst (second level). Flattened index of (n, m) is n*M + m.
///
struct SceneDims
{
    int N = 0;
    int M = 0;

    constexpr int size() const noexcept { return N * M; }
    constexpr int index(int n, int m) const noexcept { return n * M + m; }

    void validate() const
    {
        if (N < 2 || M < 2)
        {
            throw DimensionError("scene dims must satisfy N >= 2 and M >= 2, got " +
                                 std::to_string(N) + "x" + std::to_string(M));
        }
    }

    friend constexpr bool operator==(const SceneDims&, const SceneDims&) = default;
};

} // namespace gridless2d

#endif
