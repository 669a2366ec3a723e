#pragma once

#include <cstddef>

#include "cforge/errors.hpp"

namespace cforge {

// Diagonal metric J_{neg,pos} = (-E_neg) ⊕ E_pos.
struct Metric {
    int neg = 0;
    int pos = 0;

    int dim() const { return neg + pos; }

    // Diagonal entry, 0-based.
    int diag(int i) const {
        CFORGE_CHECK(i >= 0 && i < dim(), "metric index out of range");
        return i < neg ? -1 : 1;
    }

    bool operator==(const Metric&) const = default;
};

inline Metric euclidean(int n) { return Metric{0, n}; }
inline Metric neutral(int half) { return Metric{half, half}; }

}  // namespace cforge
