#include "detforge/tensor.hpp"

#include <cmath>

namespace detforge {

void EriTensor::set_symmetric(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double v) {
    (*this)(i, j, k, l) = v;
    (*this)(j, i, k, l) = v;
    (*this)(i, j, l, k) = v;
    (*this)(j, i, l, k) = v;
    (*this)(k, l, i, j) = v;
    (*this)(l, k, i, j) = v;
    (*this)(k, l, j, i) = v;
    (*this)(l, k, j, i) = v;
}

double EriTensor::max_symmetry_error(std::size_t idx[4]) const {
    double worst = 0.0;
    idx[0] = idx[1] = idx[2] = idx[3] = 0;
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    const double v = (*this)(i, j, k, l);
                    const double d = std::max({std::abs(v - (*this)(j, i, k, l)),
                                               std::abs(v - (*this)(i, j, l, k)),
                                               std::abs(v - (*this)(k, l, i, j))});
                    if (!(d <= worst)) {
                        worst = d;
                        idx[0] = i; idx[1] = j; idx[2] = k; idx[3] = l;
                        if (std::isnan(d)) return d;
                    }
                }
    return worst;
}

}  // namespace detforge
