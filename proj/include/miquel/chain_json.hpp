#pragma once

// ChainDocument: the JSON form of a built chain, its statistics and its
// verification report. Exact rationals are written as "p/q" strings, float
// values as JSON numbers (shortest round-trip form). Keys follow the subset
// enumeration order, so identical chains always serialize to identical bytes.

#include <string>
#include <string_view>
#include <variant>

#include "miquel/chain.hpp"

namespace miquel {

using AnyChain = std::variant<Chain<Rational>, Chain<double>>;

/// Wall-clock timings are deliberately left out so the output is a pure
/// function of the chain.
template <Scalar T>
std::string emit_chain_json(const Chain<T>& chain, const VerificationReport<T>* report = nullptr);

/// Reads the points, circles and lines of a ChainDocument back into a chain.
/// Throws ParseError on malformed documents.
AnyChain parse_chain_json(std::string_view text);

}  // namespace miquel
