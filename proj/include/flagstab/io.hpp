#ifndef FLAGSTAB_IO_HPP
#define FLAGSTAB_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagstab/directed_system.hpp"
#include "flagstab/flags.hpp"
#include "flagstab/liealg.hpp"
#include "flagstab/ultra.hpp"

// Text documents shared by the library and the CLI.  All numbers use the
// rational grammar -?[0-9]+(/[1-9][0-9]*)?; '#' starts a comment; tokens
// are whitespace separated.
//
//   algebra:        dim N / basis n0 n1 ... / bracket i j k c [k c ...]
//                   (a pair (j,i) never mentioned defaults to the
//                   antisymmetric completion of (i,j))
//   representation: algebra_dim N / module_dim M / action i + M row lines
//   flag:           ambient N / subspace D + D row lines, in chain order
//   subspace:       ambient N / row lines (dim = number of rows)
//   family:         ground N / set a b c (sorted lists, one per line)
//   chain:          levels K / level i + algebra and representation
//                   fields, then embed_algebra / embed_module row blocks
//                   (absent on the last level)

namespace flagstab::io {

struct ParseError : std::runtime_error {
  ParseError(int line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

LieAlgebra read_algebra(std::istream& in);
LieAlgebra read_algebra_file(const std::string& path);
void write_algebra(std::ostream& out, const LieAlgebra& L);

struct RepresentationData {
  Index algebra_dim = 0;
  Index module_dim = 0;
  std::vector<Mat> action;
};
RepresentationData read_representation(std::istream& in);
RepresentationData read_representation_file(const std::string& path);
void write_representation(std::ostream& out, const Representation& rep);

Flag read_flag(std::istream& in);
Flag read_flag_file(const std::string& path);
void write_flag(std::ostream& out, const Flag& flag);

Subspace read_subspace(std::istream& in);
Subspace read_subspace_file(const std::string& path);
void write_subspace(std::ostream& out, const Subspace& s);

ultra::SetFamily read_family(std::istream& in);
ultra::SetFamily read_family_file(const std::string& path);
void write_family(std::ostream& out, const ultra::SetFamily& family);

AlgebraChain read_chain(std::istream& in);
AlgebraChain read_chain_file(const std::string& path);
void write_chain(std::ostream& out, const AlgebraChain& chain);

}  // namespace flagstab::io

#endif
