#include "rollgeo/random.hpp"

#include <algorithm>

#include "rollgeo/errors.hpp"

namespace rollgeo {

std::vector<double> sample_time_tuple(Rng& rng, const std::vector<double>& pool,
                                      double min_separation) {
    if (pool.size() < 5) {
        throw validation_error("sample_time_tuple: need at least five candidate times");
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> pick;
        pick.reserve(5);
        while (pick.size() < 5) {
            const double t = pool[static_cast<std::size_t>(rng.below(pool.size()))];
            if (std::find(pick.begin(), pick.end(), t) == pick.end()) {
                pick.push_back(t);
            }
        }
        std::sort(pick.begin(), pick.end());
        bool separated = true;
        for (int i = 0; i < 4; ++i) {
            if (pick[static_cast<std::size_t>(i + 1)] - pick[static_cast<std::size_t>(i)] <
                min_separation) {
                separated = false;
                break;
            }
        }
        if (separated) {
            return pick;
        }
    }
    throw numerical_error("sample_time_tuple: could not draw a separated 5-tuple");
}

}  // namespace rollgeo
