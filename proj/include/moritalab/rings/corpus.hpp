#pragma once

#include <string>
#include <vector>

#include "moritalab/rings/bimodule.hpp"

namespace moritalab::rings {

/// Upper triangular 2x2 matrices over r.
Ring upper_triangular(const Ring& r);

struct NamedRing {
  std::string name;
  Ring ring;
};

/// Small rings used by tests and demos (all of order <= 12).
std::vector<NamedRing> ring_corpus();

struct TensorPair {
  std::string name;
  BimodulePtr left;   // (R, S)
  BimodulePtr right;  // (S, T)
};

/// Deterministic bimodule pairs over every middle ring of ring_corpus().
std::vector<TensorPair> tensor_pair_corpus();

}  // namespace moritalab::rings
