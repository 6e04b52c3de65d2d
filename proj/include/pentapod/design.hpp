#pragma once

#include "pentapod/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pentapod {

using Point3 = std::array<Rational, 3>;

inline Point3 pt(Rational x, Rational y, Rational z) { return {std::move(x), std::move(y), std::move(z)}; }
inline Point3 pt(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

struct Leg {
    Point3 platform;                 // m_i, moving-frame coordinates
    Point3 base;                     // M_i, fixed-frame coordinates
    std::optional<Rational> radius2; // squared leg length, if prescribed
};

// n-legged SPS manipulator, n in {3,4,5,6}.
struct PodDesign {
    std::vector<Leg> legs;

    std::size_t size() const { return legs.size(); }

    void validate() const {
        if (legs.size() < 3 || legs.size() > 6)
            throw std::invalid_argument("pod must have 3..6 legs");
        for (std::size_t i = 0; i < legs.size(); ++i) {
            if (legs[i].radius2 && sign(*legs[i].radius2) <= 0)
                throw std::invalid_argument("squared leg length must be positive");
            for (std::size_t j = i + 1; j < legs.size(); ++j) {
                if (legs[i].platform == legs[j].platform && legs[i].base == legs[j].base)
                    throw std::invalid_argument("legs must be pairwise distinct as (m,M) pairs");
            }
        }
    }

    PodDesign swapped() const {  // exchange platform and base
        PodDesign d;
        for (const auto& l : legs) d.legs.push_back({l.base, l.platform, l.radius2});
        return d;
    }

    PodDesign relabeled(const std::vector<std::size_t>& perm) const {
        PodDesign d;
        for (std::size_t i : perm) d.legs.push_back(legs[i]);
        return d;
    }
};

inline Rational dot(const Point3& a, const Point3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Point3 cross(const Point3& a, const Point3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Point3 operator-(const Point3& a, const Point3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Point3 operator+(const Point3& a, const Point3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Point3 operator*(const Rational& s, const Point3& a) {
    return {s * a[0], s * a[1], s * a[2]};
}
inline Rational norm2(const Point3& a) { return dot(a, a); }

}  // namespace pentapod
