#pragma once

#include <stdexcept>
#include <string>

#include "gqec/channel.hpp"

namespace gqec {

/// Raised for malformed or out-of-range channel specs; the CLI maps it to
/// exit status 2 (usage error).
class SpecParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Textual channel specs:
///   attenuation:<eta>       0 < eta < 1
///   amplification:<eta>     eta > 1
///   classical-noise:<v>     isotropic N = v*I, v > 0
///   phase-conjugation:<eta> eta > 0
///   measure-prepare
///   file:<path>             channel JSON {"M": [[...]], "N": [[...]]}
GaussianChannel parse_channel_spec(const std::string& spec);

}  // namespace gqec
