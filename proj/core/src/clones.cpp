#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "exstack/corpus.hpp"
#include "exstack/parser.hpp"

namespace exstack {

namespace {

std::map<std::string_view, std::size_t> token_bag(const TokenStream& s) {
  std::map<std::string_view, std::size_t> bag;
  for (const Token& t : s.tokens) {
    if (is_countable(t)) ++bag[t.lexeme];
  }
  return bag;
}

double ratio(std::size_t overlap, std::size_t a, std::size_t b) {
  std::size_t m = std::max(a, b);
  return m == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(m);
}

/// Smallest overlap a partner of a size-n fragment could have, rounded down
/// so the derived prefix never comes out too short.
std::size_t min_overlap(double threshold, std::size_t n) {
  double need = std::ceil(threshold * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(need, 1.0)), 1, n);
}

struct Fragment {
  std::string file_id;
  std::string method;
  Span span;
  TokenStream tokens;
  /// Global ranks of (lexeme, occurrence) elements, ascending.
  std::vector<std::uint32_t> elements;
};

/// Maps each occurrence-numbered token to a rank in ascending global
/// frequency, so that prefixes hold the rarest tokens.
class ElementRanker {
  using Key = std::pair<std::string, std::size_t>;

 public:
  void count(const TokenStream& s) {
    for (const auto& e : occurrences(s)) ++freq_[e];
  }

  void finish() {
    std::vector<std::pair<std::size_t, const Key*>> keys;
    keys.reserve(freq_.size());
    for (const auto& [k, f] : freq_) keys.emplace_back(f, &k);
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first < y.first : *x.second < *y.second;
    });
    for (std::size_t i = 0; i < keys.size(); ++i) {
      rank_[*keys[i].second] = static_cast<std::uint32_t>(i);
    }
  }

  std::vector<std::uint32_t> ranks(const TokenStream& s) const {
    std::vector<std::uint32_t> out;
    for (const auto& e : occurrences(s)) out.push_back(rank_.at(e));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::vector<std::pair<std::string, std::size_t>> occurrences(
      const TokenStream& s) {
    std::map<std::string_view, std::size_t> seen;
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const Token& t : s.tokens) {
      if (!is_countable(t)) continue;
      out.emplace_back(t.lexeme, seen[t.lexeme]++);
    }
    return out;
  }

  std::map<Key, std::size_t> freq_;
  std::map<Key, std::uint32_t> rank_;
};

std::size_t sorted_overlap(const std::vector<std::uint32_t>& a,
                           const std::vector<std::uint32_t>& b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n, ++i, ++j;
    }
  }
  return n;
}

template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i, 0u);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) f(i, t);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

double clone_similarity(const TokenStream& a, const TokenStream& b) {
  auto ba = token_bag(a);
  auto bb = token_bag(b);
  std::size_t na = 0, nb = 0, overlap = 0;
  for (const auto& [lex, n] : ba) {
    na += n;
    auto it = bb.find(lex);
    if (it != bb.end()) overlap += std::min(n, it->second);
  }
  for (const auto& [lex, n] : bb) nb += n;
  return ratio(overlap, na, nb);
}

std::vector<MethodFragment> extract_methods(const std::string& file_id,
                                            std::string_view text) {
  SyntaxTree tree = parse_snippet(text);
  std::vector<MethodFragment> out;
  for (NodeId id : tree.preorder()) {
    const TreeNode& n = tree.node(id);
    if (n.label != NodeLabel::MethodDeclaration || n.synthetic) continue;
    MethodFragment m;
    m.file_id = file_id;
    m.span = n.span;
    for (NodeId c : n.children) {
      if (tree.node(c).label == NodeLabel::Name) {
        m.name = tree.node(c).value;
        break;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

CloneResult detect_clones(const std::vector<SourceFile>& examples,
                          const std::vector<SourceFile>& files,
                          const CloneOptions& options) {
  CloneResult result;
  std::vector<Fragment> fragments;
  for (const auto& f : files) {
    std::vector<MethodFragment> methods;
    try {
      methods = extract_methods(f.id, f.text);
    } catch (const ParseError& e) {
      result.skipped.emplace_back(f.id, e.what());
      continue;
    }
    for (auto& m : methods) {
      Fragment fr;
      fr.file_id = f.id;
      fr.method = std::move(m.name);
      fr.span = m.span;
      fr.tokens = tokenize(std::string_view(f.text).substr(m.span.begin, m.span.size()));
      fragments.push_back(std::move(fr));
    }
  }

  struct Query {
    const SourceFile* file;
    TokenStream tokens;
    std::vector<std::uint32_t> elements;
  };
  std::vector<Query> queries;
  for (const auto& e : examples) {
    TokenStream s = tokenize(e.text);
    std::size_t size = measured_token_count(s);
    if (size < options.min_tokens || size == 0) continue;
    queries.push_back({&e, std::move(s), {}});
  }

  bool brute = options.brute_force || options.threshold <= 0.0;
  // Rare-token inverted index over fragment prefixes.
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> index;
  if (!brute) {
    ElementRanker ranker;
    for (const auto& fr : fragments) ranker.count(fr.tokens);
    for (const auto& q : queries) ranker.count(q.tokens);
    ranker.finish();
    for (std::size_t i = 0; i < fragments.size(); ++i) {
      auto& fr = fragments[i];
      fr.elements = ranker.ranks(fr.tokens);
      std::size_t n = fr.elements.size();
      if (n == 0) continue;
      std::size_t prefix = n - min_overlap(options.threshold, n) + 1;
      for (std::size_t k = 0; k < prefix; ++k) {
        index[fr.elements[k]].push_back(static_cast<std::uint32_t>(i));
      }
    }
    for (auto& q : queries) q.elements = ranker.ranks(q.tokens);
  }

  unsigned threads = std::max(1u, options.threads);
  std::vector<std::vector<ClonePair>> found(threads);
  parallel_for(queries.size(), threads, [&](std::size_t qi, unsigned worker) {
    const Query& q = queries[qi];
    auto emit = [&](const Fragment& fr, double sim) {
      ClonePair p;
      p.example_id = q.file->id;
      p.counterpart_id = fr.file_id;
      p.method = fr.method;
      p.counterpart_span = fr.span;
      p.similarity = sim;
      found[worker].push_back(std::move(p));
    };
    if (brute) {
      for (const auto& fr : fragments) {
        double sim = clone_similarity(q.tokens, fr.tokens);
        if (sim >= options.threshold) emit(fr, sim);
      }
      return;
    }
    std::size_t n = q.elements.size();
    std::size_t prefix = n - min_overlap(options.threshold, n) + 1;
    std::vector<std::uint32_t> candidates;
    for (std::size_t k = 0; k < prefix; ++k) {
      auto it = index.find(q.elements[k]);
      if (it == index.end()) continue;
      candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::uint32_t c : candidates) {
      const Fragment& fr = fragments[c];
      double sim = ratio(sorted_overlap(q.elements, fr.elements), n, fr.elements.size());
      if (sim >= options.threshold) emit(fr, sim);
    }
  });

  for (auto& part : found) {
    result.pairs.insert(result.pairs.end(), std::make_move_iterator(part.begin()),
                        std::make_move_iterator(part.end()));
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const ClonePair& x, const ClonePair& y) {
              return std::tie(x.example_id, x.counterpart_id, x.counterpart_span.begin,
                              x.counterpart_span.end) <
                     std::tie(y.example_id, y.counterpart_id, y.counterpart_span.begin,
                              y.counterpart_span.end);
            });
  return result;
}

}  // namespace exstack
