#include <fstream>
#include <nlohmann/json.hpp>

#include "symproj/operator.hpp"

// Debug dump format: one JSON object with the space description and the
// entries as a row-major array of [re, im] pairs. See README ("Operator
// dumps").

namespace symproj {

namespace {

using nlohmann::json;

json space_to_json(const HilbertSpace& s) {
  json j;
  j["dimension"] = s.dimension();
  switch (s.kind()) {
    case SpaceKind::SpinRegister:
      j["kind"] = "spin-register";
      j["n_spins"] = s.n_sites();
      break;
    case SpaceKind::DickeSector:
      j["kind"] = "dicke-sector";
      j["n_spins"] = s.n_sites();
      break;
    case SpaceKind::FockBlocks: {
      j["kind"] = "fock-block";
      j["n_pairs"] = s.n_pairs();
      json blocks = json::array();
      for (const auto& b : s.blocks()) blocks.push_back({b.n_a, b.n_b});
      j["blocks"] = blocks;
      break;
    }
  }
  return j;
}

HilbertSpace space_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "spin-register")
    return HilbertSpace::spin_register(j.at("n_spins").get<int>());
  if (kind == "dicke-sector")
    return HilbertSpace::dicke_sector(j.at("n_spins").get<int>());
  if (kind == "fock-block") {
    std::vector<BlockTotals> blocks;
    for (const auto& b : j.at("blocks"))
      blocks.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
    return HilbertSpace::fock_blocks(j.at("n_pairs").get<int>(),
                                     std::move(blocks),
                                     j.at("dimension").get<std::int64_t>());
  }
  throw std::invalid_argument("unknown space kind '" + kind + "'");
}

}  // namespace

std::string to_json_string(const Operator& op) {
  json j;
  j["space"] = space_to_json(op.space());
  j["hermitian"] = op.hermitian_tagged();
  json entries = json::array();
  const Matrix& m = op.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back({m(r, c).real(), m(r, c).imag()});
  j["entries"] = std::move(entries);
  return j.dump();
}

Operator operator_from_json_string(const std::string& text) {
  const json j = json::parse(text);
  HilbertSpace space = space_from_json(j.at("space"));
  const auto& entries = j.at("entries");
  const std::int64_t dim = space.dimension();
  if (static_cast<std::int64_t>(entries.size()) != dim * dim)
    throw std::invalid_argument("entry count does not match dimension");
  Matrix m(dim, dim);
  std::int64_t k = 0;
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < dim; ++c, ++k)
      m(r, c) = Complex(entries[k].at(0).get<double>(),
                        entries[k].at(1).get<double>());
  if (j.value("hermitian", false))
    return Operator::hermitian(std::move(space), std::move(m));
  return Operator(std::move(space), std::move(m));
}

void save_operator_json(const Operator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << to_json_string(op) << '\n';
}

Operator load_operator_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return operator_from_json_string(text);
}

}  // namespace symproj
