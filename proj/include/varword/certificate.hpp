// Witness certificates in a verifiable file form.
//   insensitive:    "insensitive k m n r a b mode" + witness tokens
//   monochromatic:  "monochromatic k m n r color"  + witness tokens
#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "varword/bounds.hpp"
#include "varword/gr_solver.hpp"
#include "varword/insensitivity.hpp"
#include "varword/word.hpp"

namespace varword {

using Certificate = std::variant<InsensitivityClaim, MonochromaticClaim>;

inline void write_certificate(std::ostream& out, const InsensitivityClaim& claim) {
  out << "insensitive " << claim.k << ' ' << claim.m << ' ' << claim.n << ' ' << claim.r << ' '
      << claim.a << ' ' << claim.b << ' ' << to_token(claim.mode) << '\n'
      << to_text(claim.witness) << '\n';
}

inline void write_certificate(std::ostream& out, const MonochromaticClaim& claim) {
  out << "monochromatic " << claim.k << ' ' << claim.m << ' ' << claim.n << ' ' << claim.r << ' '
      << claim.color << '\n'
      << to_text(claim.witness) << '\n';
}

inline Certificate read_certificate(std::istream& in) {
  std::string header, word_line;
  long long line_no = 0;
  while (std::getline(in, header)) {
    ++line_no;
    auto hash = header.find('#');
    if (hash != std::string::npos) header = header.substr(0, hash);
    std::istringstream probe(header);
    std::string token;
    if (probe >> token) break;
  }
  std::istringstream fields(header);
  std::string kind;
  fields >> kind;
  if (!std::getline(in, word_line))
    fail(Errc::parse_error, "certificate is missing its witness line", line_no + 1);
  ParsedWord parsed = parse_word_tokens(word_line, line_no + 1);
  if (kind == "insensitive") {
    InsensitivityClaim claim;
    std::string mode;
    if (!(fields >> claim.k >> claim.m >> claim.n >> claim.r >> claim.a >> claim.b >> mode))
      fail(Errc::parse_error, "header reads 'insensitive k m n r a b mode'", line_no);
    claim.mode = parse_bound_mode(mode);
    claim.witness = validate_varword(claim.k + 1, claim.m, parsed.symbols);
    if (claim.witness.length() != claim.n)
      fail(Errc::parse_error, "witness length differs from the header n", line_no + 1);
    return claim;
  }
  if (kind == "monochromatic") {
    MonochromaticClaim claim;
    if (!(fields >> claim.k >> claim.m >> claim.n >> claim.r >> claim.color))
      fail(Errc::parse_error, "header reads 'monochromatic k m n r color'", line_no);
    if (claim.color < 1 || claim.color > claim.r)
      fail(Errc::color_out_of_range, "certificate color outside {1..r}", line_no);
    claim.witness = validate_varword(claim.k, claim.m, parsed.symbols);
    if (claim.witness.length() != claim.n)
      fail(Errc::parse_error, "witness length differs from the header n", line_no + 1);
    return claim;
  }
  fail(Errc::parse_error, "unknown certificate kind '" + kind + "'", line_no);
}

}  // namespace varword
