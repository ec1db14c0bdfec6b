#pragma once

// Text formats: `.dga` documents, `.hgr` homology lists and Gamma tables.

#include "wseq/classify.hpp"

#include <string>
#include <vector>

namespace wseq {

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Syntax or validation error at a position of the input.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& source, SourcePos pos, const std::string& message);
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

struct DgaDocument {
  struct Declaration {
    std::string name;
    int degree = 0;
    SourcePos pos;
  };
  struct Assignment {
    std::string name;
    AlgElement value;
    SourcePos pos;
  };
  std::vector<Declaration> generators;
  std::vector<Assignment> differentials;
  FreeDGA dga;
};

/// Grammar, one statement per line, `#` starts a comment:
///   generator <name> <degree>
///   d <name> = <expr>
///   expr := ['-'] term (('+'|'-') term)* | 0
///   term := [integer ['*']] name ('*' name)*
/// Generators may be declared after they are used. The document must validate.
DgaDocument parse_dga(const std::string& text, const std::string& source = "<input>");
DgaDocument load_dga(const std::string& path);
/// Inverse of parse_dga up to whitespace and comments.
std::string render_dga(const FreeDGA& d, const std::string& header = "");

/// Lines `H <n> = <group>`; unlisted degrees are zero.
GradedGroup parse_hgr(const std::string& text, const std::string& source = "<input>");
GradedGroup load_hgr(const std::string& path);
std::string render_hgr(const GradedGroup& h);

/// Lines `gamma <n> = <group>` and `gamma <n> if b<m> = <k> -> <group>`.
GammaTable parse_gamma_table(const std::string& text, const std::string& source = "<input>");
GammaTable load_gamma_table(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace wseq
