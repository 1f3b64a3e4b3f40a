#pragma once

#include "npzeta/arith.hpp"
#include "npzeta/laurent.hpp"

#include <istream>
#include <memory>
#include <string>

namespace npz {

// A parsed curve: f refers to *field, which is shared so the pair can be copied freely.
struct Curve {
    std::shared_ptr<const Fq> field;
    Laurent<Fq> f;
};

// Line-oriented format: "p <prime>", "n <degree>" (default 1), optional
// "modulus c0 ... c_{n-1} [1]" (ascending, monic), "term i j c0 ... c_{n-1}"; '#' starts a
// comment. Coefficients are integers reduced mod p; without a modulus line the field uses
// the smallest irreducible polynomial.
Curve parse_curve(std::istream& in);
Curve parse_curve_string(const std::string& text);
Curve parse_curve_file(const std::string& path);

// Inverse of parse_curve: always writes the modulus so the field is reproduced exactly.
std::string emit_curve(const Curve& c);

}  // namespace npz
