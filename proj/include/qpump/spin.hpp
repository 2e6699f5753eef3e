#pragma once

#include "qpump/common.hpp"

namespace qpump {

enum class Axis { Zero, X, Y, Z };

/// Pauli matrix sigma^0 (identity), sigma^x, sigma^y or sigma^z.
Mat pauli(Axis axis);

/// Parse "0", "x", "y", "z" (case-insensitive) into an Axis.
Axis axis_from_string(const std::string& s);

/// Embed a single-site 2x2 operator at `site` in an n-qubit register:
/// I (x) ... (x) op (x) ... (x) I, site 0 is the leftmost factor.
Mat embed(const Mat& op, int site, int n_qubits);

}  // namespace qpump
