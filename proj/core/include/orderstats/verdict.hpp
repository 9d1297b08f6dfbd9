#pragma once

#include <string>
#include <vector>

namespace orderstats {

struct WitnessCoordinate {
    std::string name;
    double value;

    friend bool operator==(const WitnessCoordinate&, const WitnessCoordinate&) = default;
};

/// Quantified outcome of an order check on a finite grid.
///
/// `worst_excess` is the largest signed excess found (negative when every
/// grid point has slack); `max_violation` is its positive part and `witness`
/// the grid point where it is attained, smallest grid index on ties. The
/// witness is reported even when the order holds.
struct OrderVerdict {
    std::string order_name;
    bool holds = true;
    double max_violation = 0.0;
    double worst_excess = 0.0;
    std::vector<WitnessCoordinate> witness;
    std::string grid;
    std::size_t grid_points = 0;
    double tolerance = 0.0;

    friend bool operator==(const OrderVerdict&, const OrderVerdict&) = default;
};

/// Running max-reduction over grid points in index order.
class ViolationTracker {
public:
    ViolationTracker() = default;

    void observe(double excess, std::vector<WitnessCoordinate> point);

    /// Finalizes against `tolerance`: holds iff max_violation <= tolerance.
    [[nodiscard]] OrderVerdict verdict(std::string order_name, std::string grid,
                                       double tolerance) const;

private:
    bool seen_ = false;
    double worst_ = 0.0;
    std::vector<WitnessCoordinate> witness_;
    std::size_t count_ = 0;
};

}  // namespace orderstats
