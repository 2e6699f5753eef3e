#include "qpump/spin.hpp"

#include <cctype>

namespace qpump {

Mat pauli(Axis axis) {
  Mat m(2, 2);
  const cplx i(0.0, 1.0);
  switch (axis) {
    case Axis::Zero:
      m << 1, 0, 0, 1;
      break;
    case Axis::X:
      m << 0, 1, 1, 0;
      break;
    case Axis::Y:
      m << 0, -i, i, 0;
      break;
    case Axis::Z:
      m << 1, 0, 0, -1;
      break;
    default:
      throw ConfigError("pauli: invalid axis");
  }
  return m;
}

Axis axis_from_string(const std::string& s) {
  if (s.size() != 1) throw ConfigError("axis label must be one of 0, x, y, z: got '" + s + "'");
  switch (std::tolower(static_cast<unsigned char>(s[0]))) {
    case '0': return Axis::Zero;
    case 'x': return Axis::X;
    case 'y': return Axis::Y;
    case 'z': return Axis::Z;
    default: throw ConfigError("axis label must be one of 0, x, y, z: got '" + s + "'");
  }
}

Mat embed(const Mat& op, int site, int n_qubits) {
  if (site < 0 || site >= n_qubits)
    throw ConfigError("embed: site " + std::to_string(site) + " out of range for " +
                      std::to_string(n_qubits) + " qubits");
  if (op.rows() != 2 || op.cols() != 2)
    throw ConfigError("embed: operator must be 2x2");
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n_qubits; ++k) {
    out = kron(out, k == site ? op : Mat(Mat::Identity(2, 2)));
  }
  return out;
}

}  // namespace qpump
