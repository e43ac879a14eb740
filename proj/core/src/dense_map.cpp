#include "ctrack/dense_map.hpp"

namespace ctrack {

DenseMap::DenseMap(std::size_t channels, std::size_t rows, std::size_t cols, double fill)
    : channels_(channels), rows_(rows), cols_(cols), data_(channels * rows * cols, fill) {}

}  // namespace ctrack
