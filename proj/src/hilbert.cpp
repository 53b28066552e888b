#include "symproj/hilbert.hpp"

#include <sstream>

namespace symproj {

HilbertSpace HilbertSpace::spin_register(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("spin register needs >= 1 site");
  if (n_sites > kMaxRegisterSites)
    throw std::invalid_argument("spin register capped at " +
                                std::to_string(kMaxRegisterSites) +
                                " sites (dense desk scale)");
  HilbertSpace s;
  s.kind_ = SpaceKind::SpinRegister;
  s.n_sites_ = n_sites;
  s.dim_ = std::int64_t{1} << n_sites;
  return s;
}

HilbertSpace HilbertSpace::dicke_sector(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("dicke sector needs >= 1 spin");
  if (n_sites + 1 > kMaxDimension)
    throw std::invalid_argument("dicke sector dimension exceeds cap");
  HilbertSpace s;
  s.kind_ = SpaceKind::DickeSector;
  s.n_sites_ = n_sites;
  s.dim_ = n_sites + 1;
  return s;
}

HilbertSpace HilbertSpace::fock_blocks(int n_pairs,
                                       std::vector<BlockTotals> blocks,
                                       std::int64_t dimension) {
  if (n_pairs < 1) throw std::invalid_argument("need >= 1 mode pair");
  if (blocks.empty()) throw std::invalid_argument("need >= 1 block");
  if (dimension < 1 || dimension > kMaxDimension)
    throw std::invalid_argument("fock universe dimension " +
                                std::to_string(dimension) + " exceeds cap " +
                                std::to_string(kMaxDimension));
  HilbertSpace s;
  s.kind_ = SpaceKind::FockBlocks;
  s.n_pairs_ = n_pairs;
  s.blocks_ = std::move(blocks);
  s.dim_ = dimension;
  return s;
}

int HilbertSpace::n_sites() const {
  if (kind_ == SpaceKind::FockBlocks)
    throw std::logic_error("n_sites on a fock space");
  return n_sites_;
}

int HilbertSpace::n_pairs() const {
  if (kind_ != SpaceKind::FockBlocks)
    throw std::logic_error("n_pairs on a spin space");
  return n_pairs_;
}

const std::vector<BlockTotals>& HilbertSpace::blocks() const {
  if (kind_ != SpaceKind::FockBlocks)
    throw std::logic_error("blocks on a spin space");
  return blocks_;
}

std::string HilbertSpace::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case SpaceKind::SpinRegister:
      out << "spin-register(N=" << n_sites_ << ", dim=" << dim_ << ")";
      break;
    case SpaceKind::DickeSector:
      out << "dicke-sector(N=" << n_sites_ << ", dim=" << dim_ << ")";
      break;
    case SpaceKind::FockBlocks:
      out << "fock-blocks(pairs=" << n_pairs_ << ", blocks=" << blocks_.size()
          << ", dim=" << dim_ << ")";
      break;
  }
  return out.str();
}

}  // namespace symproj
