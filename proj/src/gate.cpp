#include "qprobe/gate.hpp"

#include <cmath>
#include <map>

#include "qprobe/common.hpp"

namespace qprobe {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Gate make(std::string name, int arity, std::vector<cx> entries) {
  Gate g;
  g.name = std::move(name);
  g.arity = arity;
  const std::size_t d = std::size_t(1) << arity;
  g.matrix = CMatrix(d, d);
  g.matrix.data() = std::move(entries);
  return g;
}

std::map<std::string, Gate> make_builtins() {
  std::map<std::string, Gate> t;
  const cx o(1.0, 0.0), z(0.0, 0.0), i(0.0, 1.0);
  t["I"] = make("I", 1, {o, z, z, o});
  t["X"] = make("X", 1, {z, o, o, z});
  t["Z"] = make("Z", 1, {o, z, z, -o});
  t["H"] = make("H", 1, {kInvSqrt2 * o, kInvSqrt2 * o, kInvSqrt2 * o,
                         -kInvSqrt2 * o});
  t["S"] = make("S", 1, {o, z, z, i});
  t["Sdg"] = make("Sdg", 1, {o, z, z, -i});
  t["T"] = make("T", 1, {o, z, z, cx(kInvSqrt2, kInvSqrt2)});
  t["Tdg"] = make("Tdg", 1, {o, z, z, cx(kInvSqrt2, -kInvSqrt2)});
  t["CNOT"] = make("CNOT", 2,
                   {o, z, z, z,
                    z, o, z, z,
                    z, z, z, o,
                    z, z, o, z});
  t["SWAP"] = make("SWAP", 2,
                   {o, z, z, z,
                    z, z, o, z,
                    z, o, z, z,
                    z, z, z, o});
  return t;
}

const std::map<std::string, Gate>& builtins() {
  static const std::map<std::string, Gate> t = make_builtins();
  return t;
}

}  // namespace

bool Gate::is_builtin(const std::string& name) {
  return builtins().count(name) > 0 || name == "R1";
}

const Gate& Gate::builtin(const std::string& name) {
  auto it = builtins().find(name);
  if (it == builtins().end()) throw SimError("unknown gate: " + name);
  return it->second;
}

Gate Gate::r1(double theta) {
  Gate g = make("R1", 1,
                {cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0),
                 std::polar(1.0, theta)});
  g.angle = theta;
  return g;
}

Gate Gate::from_matrix(std::string name, int arity, CMatrix m) {
  const std::size_t d = std::size_t(1) << arity;
  if (m.rows() != d || m.cols() != d)
    throw SimError("gate matrix dimension mismatch for " + name);
  if (unitarity_error(m) > tol::kUnitarity)
    throw SimError("gate matrix is not unitary: " + name);
  Gate g;
  g.name = std::move(name);
  g.arity = arity;
  g.matrix = std::move(m);
  return g;
}

const std::vector<std::string>& Gate::builtin_names() {
  static const std::vector<std::string> names = {
      "I", "X", "Z", "H", "S", "Sdg", "T", "Tdg", "R1", "CNOT", "SWAP"};
  return names;
}

std::string Gate::adjoint_name(const std::string& name) {
  if (name == "S") return "Sdg";
  if (name == "Sdg") return "S";
  if (name == "T") return "Tdg";
  if (name == "Tdg") return "T";
  return name;  // I, X, Z, H, CNOT, SWAP are self-adjoint; R1 negates angle
}

}  // namespace qprobe
