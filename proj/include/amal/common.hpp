#pragma once

#include <stdexcept>
#include <string>

namespace amal {

// Error taxonomy.  The cli maps these onto exit codes: bad input -> 2,
// resource caps -> 3.  invariant_error always indicates a bug.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A constructed object failed its construction-time verification
// (e.g. a map that is not a homomorphism).
struct validation_error : input_error {
  using input_error::input_error;
};

// An operation was called outside its stated precondition.
struct precondition_error : input_error {
  using input_error::input_error;
};

struct resource_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct Limits {
  int ring_size_cap = 65536;
  int table_cache_limit = 4096;  // precompute op tables up to this carrier size
  long ideal_cap = 100000;
  long submodule_cap = 10000;
  int gaussian_degree = 3;
  long sample_budget = 100000;
  unsigned long long seed = 0;
};

// Process-wide limits, adjustable by the cli before any construction.
Limits& limits();

}  // namespace amal
