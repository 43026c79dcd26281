#include "pulseforge/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pulseforge/dynamics.hpp"

namespace pulseforge {

Operator rotation_gate(int n, const std::vector<int>& spins, Axis axis,
                       double angle) {
  if (spins.empty()) throw std::invalid_argument("rotation gate needs at least one spin");
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix gen = Matrix::Zero(dim, dim);
  for (int k : spins) {
    if (k < 1 || k > n) throw std::out_of_range("rotation gate spin index out of range");
    gen += spin_operator(n, k, axis).mat();
  }
  return expm_hermitian(Operator::hermitian(std::move(gen)), angle);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::string strip(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  return s;
}

}  // namespace

Operator standard_gate(const std::string& name, const SpinSystem& sys) {
  const std::string spec = strip(name);
  if (spec == "identity")
    return Operator::unitary(Matrix::Identity(sys.dim(), sys.dim()));

  const auto open = spec.find('(');
  const auto close = spec.rfind(')');
  if (spec.substr(0, open) != "rot" || open == std::string::npos ||
      close == std::string::npos || close < open)
    throw std::invalid_argument("unknown gate: " + name +
                                " (expected \"identity\" or \"rot(spins...,axis,angle_deg)\")");

  const auto args = split(spec.substr(open + 1, close - open - 1), ',');
  if (args.size() < 3)
    throw std::invalid_argument("gate " + name + ": need spins, axis, angle");

  std::vector<int> spins;
  for (size_t i = 0; i + 2 < args.size(); ++i) {
    size_t pos = 0;
    const int k = std::stoi(args[i], &pos);
    if (pos != args[i].size())
      throw std::invalid_argument("gate " + name + ": bad spin index '" + args[i] + "'");
    spins.push_back(k);
  }

  const std::string& axis_str = args[args.size() - 2];
  Axis axis;
  if (axis_str == "x") axis = Axis::x;
  else if (axis_str == "y") axis = Axis::y;
  else if (axis_str == "z") axis = Axis::z;
  else throw std::invalid_argument("gate " + name + ": axis must be x, y, or z");

  size_t pos = 0;
  const double angle_deg = std::stod(args.back(), &pos);
  if (pos != args.back().size())
    throw std::invalid_argument("gate " + name + ": bad angle '" + args.back() + "'");

  return rotation_gate(sys.n, spins, axis, angle_deg * std::numbers::pi / 180.0);
}

}  // namespace pulseforge
