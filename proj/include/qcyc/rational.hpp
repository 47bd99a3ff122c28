#pragma once
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace qcyc {

// Exact ground field: Q via GMP. All engine arithmetic is exact; there is no
// floating point anywhere in the core.
using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Accepts "p/q", "p", with optional sign.
inline Rat rat_parse(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

}  // namespace qcyc
