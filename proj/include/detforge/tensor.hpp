#pragma once

#include <cstddef>
#include <vector>

namespace detforge {

// Dense rank-4 tensor in chemist notation, (ij|kl) at ((i*n+j)*n+k)*n+l.
class EriTensor {
public:
    EriTensor() = default;
    explicit EriTensor(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

    std::size_t dim() const { return n_; }

    double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return data_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return data_[((i * n_ + j) * n_ + k) * n_ + l];
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    // Writes v into all eight permutation-equivalent slots.
    void set_symmetric(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double v);

    // Largest deviation from 8-fold symmetry, with the offending index.
    double max_symmetry_error(std::size_t idx[4]) const;

    bool operator==(const EriTensor& o) const { return n_ == o.n_ && data_ == o.data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace detforge
