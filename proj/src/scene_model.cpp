#include "ksorder/scene_model.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ksorder/error.hpp"

namespace ksorder {

ProblemParams::ProblemParams(unsigned n, unsigned k) : n_(n), k_(k) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::invalid_argument,
                "parameters require 1 <= k <= n, got n=" + std::to_string(n) +
                    " k=" + std::to_string(k));
  }
  query_count_ = binomial(n, k);
}

void ProblemParams::require_masks() const {
  if (n_ > kMaxMaskSpikes) {
    throw Error(ErrorKind::capacity, "n=" + std::to_string(n_) +
                                         " exceeds the mask limit of " +
                                         std::to_string(kMaxMaskSpikes));
  }
}

void ProblemParams::require_scene_enumeration(unsigned max_n) const {
  const unsigned cap = std::min(max_n, kMaxSceneSpikes);
  if (n_ > cap) {
    throw Error(ErrorKind::capacity,
                "n=" + std::to_string(n_) +
                    " exceeds the scene enumeration cap of " +
                    std::to_string(cap));
  }
}

Query make_query(std::span<const unsigned> elements) {
  return Query{elements_to_mask(elements)};
}

Query make_query(std::initializer_list<unsigned> elements) {
  return make_query(std::span<const unsigned>(elements.begin(), elements.size()));
}

QuerySequence::QuerySequence(ProblemParams params, std::vector<Query> queries)
    : params_(params), queries_(std::move(queries)) {}

namespace {

// Returns an empty string when complete, else a description of the defect.
std::string completeness_defect(const QuerySequence& seq) {
  const auto& p = seq.params();
  p.require_masks();
  const std::uint64_t total = p.query_count();
  std::vector<bool> seen(total, false);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Query q = seq[i];
    if (q.size() != p.k() || (q.mask & ~p.universe()) != 0) {
      return "query " + std::to_string(i + 1) + " {" + format_query(q) +
             "} is not a " + std::to_string(p.k()) + "-subset of 0.." +
             std::to_string(p.n() - 1);
    }
    const Rank r = rank(ReferenceOrder::lexicographic, q.mask, p.n(), p.k());
    if (seen[r]) {
      return "query {" + format_query(q) + "} repeated at position " +
             std::to_string(i + 1);
    }
    seen[r] = true;
  }
  for (Rank r = 0; r < total; ++r) {
    if (!seen[r]) {
      const Query q{unrank(ReferenceOrder::lexicographic, r, p.n(), p.k())};
      return "query {" + format_query(q) + "} is absent";
    }
  }
  return {};
}

}  // namespace

bool QuerySequence::is_complete() const {
  return queries_.size() == params_.query_count() &&
         completeness_defect(*this).empty();
}

void QuerySequence::require_complete() const {
  std::string defect = completeness_defect(*this);
  if (defect.empty() && queries_.size() != params_.query_count()) {
    defect = "sequence has " + std::to_string(queries_.size()) +
             " queries, expected " + std::to_string(params_.query_count());
  }
  if (!defect.empty()) throw Error(ErrorKind::incomplete_sequence, defect);
}

SpikeRelabeling::SpikeRelabeling(std::vector<unsigned> perm)
    : perm_(std::move(perm)) {
  std::vector<bool> hit(perm_.size(), false);
  for (unsigned v : perm_) {
    if (v >= perm_.size() || hit[v]) {
      throw Error(ErrorKind::invalid_argument,
                  "relabeling is not a permutation of 0.." +
                      std::to_string(perm_.size() - 1));
    }
    hit[v] = true;
  }
}

SpikeRelabeling SpikeRelabeling::identity(unsigned n) {
  std::vector<unsigned> perm(n);
  for (unsigned i = 0; i < n; ++i) perm[i] = i;
  return SpikeRelabeling(std::move(perm));
}

Mask SpikeRelabeling::apply(Mask m) const {
  Mask out = 0;
  while (m != 0) {
    out |= Mask{1} << perm_[static_cast<unsigned>(std::countr_zero(m))];
    m &= m - 1;
  }
  return out;
}

QuerySequence relabel(const QuerySequence& seq, const SpikeRelabeling& p) {
  if (p.size() != seq.params().n()) {
    throw Error(ErrorKind::invalid_argument,
                "relabeling size does not match n");
  }
  QuerySequence out(seq.params());
  for (const Query& q : seq.queries()) out.push_back(Query{p.apply(q.mask)});
  return out;
}

std::uint64_t scene_count(const ProblemParams& params) {
  std::uint64_t total = 0;
  for (unsigned t = params.k(); t <= params.n(); ++t) {
    const std::uint64_t c = binomial(params.n(), t);
    if (total > UINT64_MAX - c) {
      throw Error(ErrorKind::overflow, "scene count does not fit 64 bits");
    }
    total += c;
  }
  return total;
}

std::vector<Scene> enumerate_scenes(const ProblemParams& params,
                                    unsigned max_n) {
  params.require_scene_enumeration(max_n);
  std::vector<Scene> scenes;
  scenes.reserve(scene_count(params));
  for_each_scene(params, [&](Scene s) { scenes.push_back(s); });
  return scenes;
}

std::string format_query(Query q, char sep) {
  std::string out;
  for (unsigned e : mask_to_elements(q.mask)) {
    if (!out.empty()) out += sep;
    out += std::to_string(e);
  }
  return out;
}

void write_sequence(std::ostream& out, const QuerySequence& seq) {
  out << "n=" << seq.params().n() << " k=" << seq.params().k() << '\n';
  for (const Query& q : seq.queries()) out << format_query(q) << '\n';
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::parse,
              "line " + std::to_string(line) + ": " + what);
}

unsigned parse_number(std::string_view text, std::size_t line) {
  if (text.empty() || text.size() > 9) parse_fail(line, "expected a number");
  unsigned v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') parse_fail(line, "expected a number");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

}  // namespace

QuerySequence read_sequence(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) parse_fail(1, "missing header 'n=<n> k=<k>'");
  const auto space = line.find(' ');
  if (line.rfind("n=", 0) != 0 || space == std::string::npos ||
      line.compare(space + 1, 2, "k=") != 0) {
    parse_fail(1, "malformed header '" + line + "'");
  }
  const unsigned n = parse_number(std::string_view(line).substr(2, space - 2), 1);
  const unsigned k = parse_number(std::string_view(line).substr(space + 3), 1);
  QuerySequence seq{ProblemParams(n, k)};
  seq.params().require_masks();

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<unsigned> elements;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      elements.push_back(parse_number(rest.substr(0, comma), lineno));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (elements.size() != k) {
      parse_fail(lineno, "expected " + std::to_string(k) + " spike IDs");
    }
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] >= n || (i > 0 && elements[i] <= elements[i - 1])) {
        parse_fail(lineno, "spike IDs must be ascending and below n");
      }
    }
    seq.push_back(make_query(elements));
  }
  return seq;
}

QuerySequence read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open '" + path + "'");
  return read_sequence(in);
}

void write_sequence_file(const std::string& path, const QuerySequence& seq) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::parse, "cannot write '" + path + "'");
  write_sequence(out, seq);
}

}  // namespace ksorder
