#pragma once

// Text front ends: the module-expression grammar
//
//   expr   := factor ('x' factor)* | '0'
//   factor := atom ('^' INT)?
//   atom   := 'R' | 'Qp(' INT ')' | 'Zp(' INT ')' | 'Z/' INT | 'ZS' | 'Sol'
//           | 'Pruf(' INT ')' | 'Qd' | 'QSol'
//
// and adele arithmetic over Z[1/S]:
//
//   sum     := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | primary
//   primary := INT ('/' INT)? | 'e(' INT ')' | '(' sum ')'
//
// Whitespace between tokens is ignored.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adelic/adele.hpp"
#include "adelic/localization.hpp"
#include "adelic/structure.hpp"

namespace adelic {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

    /// Byte offset into the input where parsing stopped.
    std::size_t offset() const noexcept { return offset_; }
    /// Tokens that would have been accepted at that offset; token classes are
    /// written in angle brackets, e.g. `<prime>` or `<end>`.
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

ModuleExpr parse_expr(std::string_view text, const PrimeSet& sigma);

/// Evaluates an arithmetic expression; rationals embed diagonally and e(p)
/// is the idempotent of Z_Sigma at p.
Adele eval_adele(std::string_view text, const PrimeSet& sigma, int k = PadicNumber::kDefaultPrecision,
                 int level = ProfiniteInt::kDefaultLevel);

}  // namespace adelic
