// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sac/rng.hpp"

namespace sac {

using cd = std::complex<double>;

enum class GeometryKind { ula, nested, dilated, custom };

std::string to_string(GeometryKind kind);
GeometryKind geometry_kind_from_string(const std::string &name);

/// Sparse linear array: strictly increasing sensor positions in units of half
/// the carrier wavelength, first sensor at 0.
struct SensorSet {
    std::vector<int> positions;
    std::string label;

    int size() const { return static_cast<int>(positions.size()); }
    int aperture() const { return positions.empty() ? 0 : positions.back(); }

    std::string to_json() const;
    static SensorSet from_json(const std::string &text);
};

/// Single far-field source: angle (kept as sin theta), positive amplitude,
/// and the l2 noise bound epsilon.
struct SourceScene {
    double sin_theta = 0.0;
    double alpha = 1.0;
    double epsilon = 0.0;

    double snr() const { return (alpha / epsilon) * (alpha / epsilon); }
};

/// One noisy snapshot y of length P.
struct Measurement {
    std::vector<cd> y;
    SensorSet geometry;
    double epsilon = 0.0;
    std::optional<SourceScene> truth;
};

/// Build a named geometry. `sensors` is P. For nested arrays P must be even
/// with P/2 >= 2; for dilated ULAs `dilation` >= 1 scales all positions.
SensorSet make_geometry(GeometryKind kind, int sensors, int dilation = 1);

/// Steering vector entries e^{j pi d sin(theta)} over the sensor positions.
std::vector<cd> steering_vector(const SensorSet &geometry, double sin_theta);

/// Draw one snapshot y = alpha a(theta) + n. Real and imaginary noise parts
/// are (epsilon / sqrt(2P)) * U(-1,1) per entry, so ||n||_2 <= epsilon holds
/// on every draw. Same rng state gives bit-identical output.
Measurement synthesize(const SourceScene &scene, const SensorSet &geometry, Rng &rng);

} // namespace sac
