#include "steiner/instance.hpp"

#include <algorithm>
#include <string>

#include "steiner/errors.hpp"

namespace steiner {

Instance::Instance(std::size_t dim, std::vector<Point> terminals) : dim_(dim), terminals_(std::move(terminals)) {
    if (dim_ < 2) throw PreconditionError("dimension must be at least 2");
    if (terminals_.size() < 2) throw PreconditionError("an instance needs at least two terminals");
    for (const Point& p : terminals_) {
        if (p.dim() != dim_) throw PreconditionError("terminal dimension does not match instance");
    }
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
        for (std::size_t j = i + 1; j < terminals_.size(); ++j) {
            if (distance(terminals_[i], terminals_[j]) <= kTolGeom)
                throw PreconditionError("terminals " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
        }
    }
}

double Instance::diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
        for (std::size_t j = i + 1; j < terminals_.size(); ++j) d = std::max(d, distance(terminals_[i], terminals_[j]));
    }
    return d;
}

}  // namespace steiner
