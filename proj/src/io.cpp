#include "flagstab/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace flagstab::io {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;

  const std::string& keyword() const { return tokens.front(); }
};

// Tokenized non-empty lines, comments stripped.
std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string token;
    while (ls >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long long to_count(const Line& line, const std::string& token) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected an integer, got '" + token + "'");
  }
}

Rational to_rational(const Line& line, const std::string& token) {
  const auto q = parse_rational(token);
  if (!q) throw ParseError(line.number, "expected a rational 'p' or 'p/q', got '" + token + "'");
  return *q;
}

// Cursor over tokenized lines.
struct Reader {
  std::vector<Line> lines;
  std::size_t at = 0;

  bool done() const { return at >= lines.size(); }
  const Line& peek() const {
    if (done()) throw ParseError(lines.empty() ? 1 : lines.back().number, "unexpected end of document");
    return lines[at];
  }
  Line next() {
    const Line& line = peek();
    ++at;
    return line;
  }
  Line expect(const std::string& keyword, std::size_t min_tokens) {
    Line line = next();
    if (line.keyword() != keyword)
      throw ParseError(line.number, "expected '" + keyword + "', got '" + line.keyword() + "'");
    if (line.tokens.size() < min_tokens)
      throw ParseError(line.number, "'" + keyword + "' needs more fields");
    return line;
  }

  Vec row(Index expected_len) {
    Line line = expect("row", 1);
    if (static_cast<Index>(line.tokens.size()) - 1 != expected_len)
      throw ParseError(line.number, "row needs exactly " + std::to_string(expected_len) + " entries");
    Vec v(expected_len);
    for (Index i = 0; i < expected_len; ++i)
      v(i) = to_rational(line, line.tokens[static_cast<std::size_t>(i) + 1]);
    return v;
  }

  Mat rows(Index count, Index len) {
    Mat m(count, len);
    for (Index i = 0; i < count; ++i) m.row(i) = row(len).transpose();
    return m;
  }
};

LieAlgebra read_algebra_body(Reader& reader);
void write_algebra_body(std::ostream& out, const LieAlgebra& L);
RepresentationData read_representation_body(Reader& reader);
void write_representation_body(std::ostream& out, const Representation& rep);

LieAlgebra read_algebra_body(Reader& reader) {
  const Line dim_line = reader.expect("dim", 2);
  const long long dim = to_count(dim_line, dim_line.tokens[1]);
  if (dim < 0 || dim > 4096) throw ParseError(dim_line.number, "dim out of range");

  std::vector<std::string> names;
  if (!reader.done() && reader.peek().keyword() == "basis") {
    Line basis = reader.next();
    names.assign(basis.tokens.begin() + 1, basis.tokens.end());
    if (static_cast<long long>(names.size()) != dim)
      throw ParseError(basis.number, "basis needs exactly dim names");
  }

  LieAlgebra::Table table(static_cast<std::size_t>(dim),
                          std::vector<LieAlgebra::Terms>(static_cast<std::size_t>(dim)));
  std::map<std::pair<Index, Index>, bool> mentioned;
  while (!reader.done() && reader.peek().keyword() == "bracket") {
    Line line = reader.next();
    if (line.tokens.size() < 3 || line.tokens.size() % 2 == 0)
      throw ParseError(line.number, "bracket needs 'i j' then (index, coefficient) pairs");
    const long long i = to_count(line, line.tokens[1]);
    const long long j = to_count(line, line.tokens[2]);
    if (i < 0 || i >= dim || j < 0 || j >= dim)
      throw ParseError(line.number, "bracket index out of range");
    LieAlgebra::Terms terms;
    for (std::size_t p = 3; p + 1 < line.tokens.size(); p += 2) {
      const long long k = to_count(line, line.tokens[p]);
      if (k < 0 || k >= dim) throw ParseError(line.number, "bracket target index out of range");
      terms.emplace_back(static_cast<Index>(k), to_rational(line, line.tokens[p + 1]));
    }
    auto& cell = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    cell.insert(cell.end(), terms.begin(), terms.end());
    mentioned[{static_cast<Index>(i), static_cast<Index>(j)}] = true;
  }

  // Antisymmetric completion for pairs the document never mentions.
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      if (i == j || !mentioned.count({i, j}) || mentioned.count({j, i})) continue;
      LieAlgebra::Terms flipped;
      for (const auto& [k, c] : table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        flipped.emplace_back(k, -c);
      table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::move(flipped);
      mentioned[{j, i}] = true;
    }
  }
  return LieAlgebra::unchecked(static_cast<Index>(dim), std::move(names), std::move(table));
}

void write_algebra_body(std::ostream& out, const LieAlgebra& L) {
  out << "dim " << L.dim() << "\n";
  out << "basis";
  for (const auto& name : L.basis_names()) out << " " << name;
  out << "\n";
  for (Index i = 0; i < L.dim(); ++i) {
    for (Index j = i + 1; j < L.dim(); ++j) {
      const auto& terms = L.structure_constants()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (terms.empty()) continue;
      out << "bracket " << i << " " << j;
      for (const auto& [k, c] : terms) out << " " << k << " " << format_rational(c);
      out << "\n";
    }
  }
}

RepresentationData read_representation_body(Reader& reader) {
  const Line adim_line = reader.expect("algebra_dim", 2);
  const long long adim = to_count(adim_line, adim_line.tokens[1]);
  const Line mdim_line = reader.expect("module_dim", 2);
  const long long mdim = to_count(mdim_line, mdim_line.tokens[1]);
  if (adim < 0 || mdim < 0 || adim > 4096 || mdim > 4096)
    throw ParseError(adim_line.number, "dimension out of range");

  RepresentationData data{static_cast<Index>(adim), static_cast<Index>(mdim), {}};
  data.action.assign(static_cast<std::size_t>(adim),
                     Mat::Zero(static_cast<Index>(mdim), static_cast<Index>(mdim)));
  std::vector<bool> seen(static_cast<std::size_t>(adim), false);
  for (long long count = 0; count < adim; ++count) {
    Line line = reader.expect("action", 2);
    const long long b = to_count(line, line.tokens[1]);
    if (b < 0 || b >= adim) throw ParseError(line.number, "action index out of range");
    if (seen[static_cast<std::size_t>(b)]) throw ParseError(line.number, "duplicate action block");
    seen[static_cast<std::size_t>(b)] = true;
    data.action[static_cast<std::size_t>(b)] =
        reader.rows(static_cast<Index>(mdim), static_cast<Index>(mdim));
  }
  return data;
}

void write_representation_body(std::ostream& out, const Representation& rep) {
  out << "algebra_dim " << rep.algebra().dim() << "\n";
  out << "module_dim " << rep.module_dim() << "\n";
  for (Index b = 0; b < rep.algebra().dim(); ++b) {
    out << "action " << b << "\n";
    const Mat& m = rep.action_of_basis(b);
    for (Index i = 0; i < m.rows(); ++i) {
      out << "row";
      for (Index j = 0; j < m.cols(); ++j) out << " " << format_rational(m(i, j));
      out << "\n";
    }
  }
}

template <typename F>
auto with_file(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return f(in);
}

}  // namespace

LieAlgebra read_algebra(std::istream& in) {
  Reader reader{tokenize(in)};
  LieAlgebra L = read_algebra_body(reader);
  if (!reader.done()) throw ParseError(reader.peek().number, "trailing content");
  return L;
}

LieAlgebra read_algebra_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_algebra(in); });
}

void write_algebra(std::ostream& out, const LieAlgebra& L) { write_algebra_body(out, L); }

RepresentationData read_representation(std::istream& in) {
  Reader reader{tokenize(in)};
  RepresentationData data = read_representation_body(reader);
  if (!reader.done()) throw ParseError(reader.peek().number, "trailing content");
  return data;
}

RepresentationData read_representation_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_representation(in); });
}

void write_representation(std::ostream& out, const Representation& rep) {
  write_representation_body(out, rep);
}

Flag read_flag(std::istream& in) {
  Reader reader{tokenize(in)};
  const Line ambient_line = reader.expect("ambient", 2);
  const long long ambient = to_count(ambient_line, ambient_line.tokens[1]);
  if (ambient < 0 || ambient > 4096) throw ParseError(ambient_line.number, "ambient out of range");
  std::vector<Subspace> members;
  while (!reader.done()) {
    Line line = reader.expect("subspace", 2);
    const long long d = to_count(line, line.tokens[1]);
    if (d < 0 || d > ambient) throw ParseError(line.number, "subspace dim out of range");
    members.emplace_back(static_cast<Index>(ambient),
                         reader.rows(static_cast<Index>(d), static_cast<Index>(ambient)));
  }
  try {
    return make_flag(static_cast<Index>(ambient), std::move(members));
  } catch (const NotAChain& e) {
    throw ParseError(ambient_line.number, std::string("not a chain: ") + e.what());
  }
}

Flag read_flag_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_flag(in); });
}

void write_flag(std::ostream& out, const Flag& flag) {
  out << "ambient " << flag.ambient_dim << "\n";
  for (const Subspace& member : flag.chain) {
    out << "subspace " << member.dim() << "\n";
    for (Index i = 0; i < member.dim(); ++i) {
      out << "row";
      for (Index j = 0; j < member.ambient_dim(); ++j)
        out << " " << format_rational(member.basis()(i, j));
      out << "\n";
    }
  }
}

Subspace read_subspace(std::istream& in) {
  Reader reader{tokenize(in)};
  const Line ambient_line = reader.expect("ambient", 2);
  const long long ambient = to_count(ambient_line, ambient_line.tokens[1]);
  if (ambient < 0 || ambient > 4096) throw ParseError(ambient_line.number, "ambient out of range");
  std::vector<Vec> rows;
  while (!reader.done()) rows.push_back(reader.row(static_cast<Index>(ambient)));
  return span(rows, static_cast<Index>(ambient));
}

Subspace read_subspace_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_subspace(in); });
}

void write_subspace(std::ostream& out, const Subspace& s) {
  out << "ambient " << s.ambient_dim() << "\n";
  for (Index i = 0; i < s.dim(); ++i) {
    out << "row";
    for (Index j = 0; j < s.ambient_dim(); ++j) out << " " << format_rational(s.basis()(i, j));
    out << "\n";
  }
}

ultra::SetFamily read_family(std::istream& in) {
  Reader reader{tokenize(in)};
  const Line ground_line = reader.expect("ground", 2);
  const long long size = to_count(ground_line, ground_line.tokens[1]);
  if (size < 1 || size > 20) throw ParseError(ground_line.number, "ground size out of range 1..20");
  ultra::SetFamily family{ultra::GroundSet(static_cast<int>(size)), {}};
  while (!reader.done()) {
    Line line = reader.expect("set", 1);
    ultra::Bitset s = 0;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      const long long e = to_count(line, line.tokens[i]);
      if (e < 0 || e >= size) throw ParseError(line.number, "element outside ground set");
      s |= ultra::Bitset{1} << e;
    }
    family.members.insert(s);
  }
  return family;
}

ultra::SetFamily read_family_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_family(in); });
}

void write_family(std::ostream& out, const ultra::SetFamily& family) {
  out << "ground " << family.ground.size << "\n";
  // Sorted lists of sorted integer lists: order members lexicographically
  // by their element sequences.
  std::vector<std::vector<int>> lists;
  for (ultra::Bitset s : family.members) {
    std::vector<int> list;
    for (int e = 0; e < family.ground.size; ++e) {
      if (s & (ultra::Bitset{1} << e)) list.push_back(e);
    }
    lists.push_back(std::move(list));
  }
  std::sort(lists.begin(), lists.end());
  for (const auto& list : lists) {
    out << "set";
    for (int e : list) out << " " << e;
    out << "\n";
  }
}

AlgebraChain read_chain(std::istream& in) {
  Reader reader{tokenize(in)};
  const Line levels_line = reader.expect("levels", 2);
  const long long levels = to_count(levels_line, levels_line.tokens[1]);
  if (levels < 1 || levels > 64) throw ParseError(levels_line.number, "levels out of range");

  std::vector<AlgebraChain::LevelInput> inputs;
  std::vector<Mat> algebra_embeddings, module_embeddings;
  for (long long n = 0; n < levels; ++n) {
    Line line = reader.expect("level", 2);
    if (to_count(line, line.tokens[1]) != n)
      throw ParseError(line.number, "levels must appear in order starting at 0");
    LieAlgebra algebra = read_algebra_body(reader);
    RepresentationData rep = read_representation_body(reader);
    if (rep.algebra_dim != algebra.dim())
      throw ParseError(line.number, "representation algebra_dim != level dim");
    inputs.push_back(
        AlgebraChain::LevelInput{std::move(algebra), rep.module_dim, std::move(rep.action)});
    if (n + 1 < levels) {
      Line ea = reader.expect("embed_algebra", 3);
      const Index erows = static_cast<Index>(to_count(ea, ea.tokens[1]));
      const Index ecols = static_cast<Index>(to_count(ea, ea.tokens[2]));
      algebra_embeddings.push_back(reader.rows(erows, ecols));
      Line em = reader.expect("embed_module", 3);
      const Index mrows = static_cast<Index>(to_count(em, em.tokens[1]));
      const Index mcols = static_cast<Index>(to_count(em, em.tokens[2]));
      module_embeddings.push_back(reader.rows(mrows, mcols));
    }
  }
  if (!reader.done()) throw ParseError(reader.peek().number, "trailing content");
  return AlgebraChain(std::move(inputs), std::move(algebra_embeddings),
                      std::move(module_embeddings));
}

AlgebraChain read_chain_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return read_chain(in); });
}

void write_chain(std::ostream& out, const AlgebraChain& chain) {
  out << "levels " << chain.levels() << "\n";
  for (Index n = 0; n < chain.levels(); ++n) {
    out << "level " << n << "\n";
    write_algebra_body(out, chain.algebra(n));
    write_representation_body(out, chain.module(n));
    if (n + 1 < chain.levels()) {
      const Mat& ea = chain.algebra_embedding(n);
      out << "embed_algebra " << ea.rows() << " " << ea.cols() << "\n";
      for (Index i = 0; i < ea.rows(); ++i) {
        out << "row";
        for (Index j = 0; j < ea.cols(); ++j) out << " " << format_rational(ea(i, j));
        out << "\n";
      }
      const Mat& em = chain.module_embedding(n);
      out << "embed_module " << em.rows() << " " << em.cols() << "\n";
      for (Index i = 0; i < em.rows(); ++i) {
        out << "row";
        for (Index j = 0; j < em.cols(); ++j) out << " " << format_rational(em(i, j));
        out << "\n";
      }
    }
  }
}

}  // namespace flagstab::io
