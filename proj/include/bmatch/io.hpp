#pragma once

// Line-oriented text formats:
//
//   instance      p bm <n> <m>
//                 e <u> <v> [w]        (m lines, weight defaults to 1)
//                 b <v> <d1> ... <dk>  (n lines, strictly increasing)
//   certificate   s <size> <weight>
//                 m <e1> <e2> ...
//
// Lines starting with '#' are comments.

#include <iosfwd>
#include <string>
#include <vector>

#include "bmatch/core.hpp"

namespace bmatch {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

BInstance read_instance(std::istream& in);
BInstance read_instance_file(const std::string& path);

// `edge_notes[e]`, when present and nonempty, is emitted as a comment line
// immediately before edge e.
void write_instance(std::ostream& out, const BInstance& instance,
                    const std::vector<std::string>& header_comments = {},
                    const std::vector<std::string>& edge_notes = {});

struct Certificate {
  std::size_t size = 0;
  Weight weight = 0;
  Matching matching;
};

Certificate read_certificate(std::istream& in);
Certificate read_certificate_file(const std::string& path);
void write_certificate(std::ostream& out, const MultiGraph& g, const Matching& f);

}  // namespace bmatch
