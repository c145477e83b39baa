#include "psplit/tolerances.hpp"

#include "psplit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace psplit {

void Tolerances::validate() const
{
    auto bad = [](const char* what) { throw Error(ErrorCode::InvalidConfig, what); };
    if (!(nonneg_slack >= 0.0) || !std::isfinite(nonneg_slack))
        bad("nonneg_slack must be a finite value >= 0");
    if (rank_rel_cutoff && !(*rank_rel_cutoff > 0.0 && *rank_rel_cutoff < 1.0))
        bad("rank_rel_cutoff must lie in (0, 1)");
    if (!(eq_abs_tol >= 0.0) || !std::isfinite(eq_abs_tol))
        bad("eq_abs_tol must be a finite value >= 0");
    if (!(spectral_tol >= 0.0) || !std::isfinite(spectral_tol))
        bad("spectral_tol must be a finite value >= 0");
    if (!(solve_tol >= 0.0) || !std::isfinite(solve_tol))
        bad("solve_tol must be a finite value >= 0");
    if (max_iter == 0)
        bad("max_iter must be positive");
}

double Tolerances::rank_cutoff_for(std::size_t rows, std::size_t cols) const
{
    if (rank_rel_cutoff)
        return *rank_rel_cutoff;
    return static_cast<double>(std::max<std::size_t>({rows, cols, 1})) *
           std::numeric_limits<double>::epsilon();
}

} // namespace psplit
