#include "exstack/template.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <tuple>

#include <nlohmann/json.hpp>

#include "exstack/semantics.hpp"
#include "exstack/tokenizer.hpp"

namespace exstack {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Anchor {
  Span a;
  Span b;
};

// Mapped leaves with equal values whose order agrees in both texts, chosen
// as a longest increasing subsequence of target positions.
std::vector<Anchor> stable_leaves(const EditScript& script) {
  const SyntaxTree& a = *script.source;
  const SyntaxTree& b = *script.target;
  std::vector<NodeId> b_leaves = b.leaves();
  std::map<NodeId, std::size_t> b_pos;
  for (std::size_t i = 0; i < b_leaves.size(); ++i) b_pos[b_leaves[i]] = i;
  std::vector<std::pair<NodeId, NodeId>> cands;
  for (NodeId la : a.leaves()) {
    NodeId lb = script.mapping.to_b(la);
    if (lb == kNoNode || !b_pos.contains(lb)) continue;
    if (a.node(la).value != b.node(lb).value) continue;
    cands.emplace_back(la, lb);
  }
  std::vector<std::size_t> tails;
  std::vector<std::size_t> prev(cands.size(), SIZE_MAX);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::size_t key = b_pos[cands[i].second];
    auto it = std::lower_bound(tails.begin(), tails.end(), key,
                               [&](std::size_t idx, std::size_t k) {
                                 return b_pos[cands[idx].second] < k;
                               });
    std::size_t slot = static_cast<std::size_t>(it - tails.begin());
    if (slot > 0) prev[i] = tails[slot - 1];
    if (it == tails.end()) {
      tails.push_back(i);
    } else {
      *it = i;
    }
  }
  std::vector<Anchor> out;
  if (tails.empty()) return out;
  for (std::size_t i = tails.back(); i != SIZE_MAX; i = prev[i]) {
    out.push_back({a.node(cands[i].first).span, b.node(cands[i].second).span});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

struct GapInterval {
  long i;  // last anchor before, or -1
  long j;  // first anchor after, or anchor count
  std::vector<std::size_t> ops;
  // Extent of the op cores on each side; empty optional when none.
  std::optional<Span> core_a;
  std::optional<Span> core_b;
};

void widen(std::optional<Span>& acc, const std::optional<Span>& s) {
  if (!s) return;
  acc = acc ? Span{std::min(acc->begin, s->begin), std::max(acc->end, s->end)} : *s;
}

// Strips tokens both sides share at the region edges, never cutting into an
// op core.
void trim_common_tokens(std::string_view at, std::string_view bt, std::size_t& as,
                        std::size_t& ae, std::size_t& bs, std::size_t& be,
                        const std::optional<Span>& core_a,
                        const std::optional<Span>& core_b) {
  auto ta = tokenize(at.substr(as, ae - as)).tokens;
  auto tb = tokenize(bt.substr(bs, be - bs)).tokens;
  std::size_t base_a = as;
  std::size_t base_b = bs;
  std::size_t front = 0;
  while (front < ta.size() && front < tb.size() &&
         ta[front].lexeme == tb[front].lexeme &&
         (!core_a || base_a + ta[front].end() <= core_a->begin) &&
         (!core_b || base_b + tb[front].end() <= core_b->begin)) {
    as = base_a + ta[front].end();
    bs = base_b + tb[front].end();
    ++front;
  }
  std::size_t back = 0;
  while (back + front < ta.size() && back + front < tb.size()) {
    const Token& x = ta[ta.size() - 1 - back];
    const Token& y = tb[tb.size() - 1 - back];
    if (x.lexeme != y.lexeme) break;
    if (core_a && base_a + x.offset < core_a->end) break;
    if (core_b && base_b + y.offset < core_b->end) break;
    ae = base_a + x.offset;
    be = base_b + y.offset;
    ++back;
  }
}

GapInterval locate(const std::vector<Anchor>& anchors, Span core, bool target) {
  long k = static_cast<long>(anchors.size());
  GapInterval g{-1, k, {}, {}, {}};
  for (long x = 0; x < k; ++x) {
    const Span& s = target ? anchors[x].b : anchors[x].a;
    if (s.end <= core.begin) g.i = x;
  }
  for (long x = k - 1; x >= 0; --x) {
    const Span& s = target ? anchors[x].b : anchors[x].a;
    if (s.begin >= core.end) g.j = x;
  }
  if (g.j <= g.i) g.j = g.i + 1;
  return g;
}

std::vector<std::size_t> instance_op_indices(const EditScript& script,
                                             const AdaptationInstance& inst) {
  std::vector<std::size_t> out;
  for (const EditOp& op : inst.ops) {
    for (std::size_t i = 0; i < script.ops.size(); ++i) {
      if (script.ops[i] == op) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

bool spans_touch(const Span& x, const Span& y) {
  if (x == y) return true;
  if (!x.empty() && !y.empty()) return x.overlaps(y);
  // An insertion at either edge of a change belongs with it.
  if (x.empty() && !y.empty()) return y.begin <= x.begin && x.begin <= y.end;
  if (y.empty() && !x.empty()) return x.begin <= y.begin && y.begin <= x.end;
  return false;
}

Span span_union(const Span& x, const Span& y) {
  return {std::min(x.begin, y.begin), std::max(x.end, y.end)};
}

}  // namespace

CounterpartDiff make_counterpart_diff(CounterpartInfo info,
                                      std::shared_ptr<const SyntaxTree> example,
                                      std::shared_ptr<const SyntaxTree> counterpart,
                                      const ClassifyOptions& options) {
  CounterpartDiff d;
  d.info = std::move(info);
  d.script = prune_inner_ops(compute_edit_script(std::move(example),
                                                 std::move(counterpart)));
  d.instances = classify(d.script, options);
  return d;
}

std::vector<ChangeRegion> change_regions(const CounterpartDiff& diff,
                                         std::size_t counterpart_index) {
  const EditScript& script = diff.script;
  const SyntaxTree& a = *script.source;
  const SyntaxTree& b = *script.target;
  std::vector<Anchor> anchors = stable_leaves(script);
  std::vector<GapInterval> gaps;
  for (std::size_t r = 0; r < script.ops.size(); ++r) {
    const EditOp& op = script.ops[r];
    NodeId sa = script.source_node(op);
    NodeId sb = script.target_node(op);
    std::optional<GapInterval> ga;
    std::optional<GapInterval> gb;
    if (sa != kNoNode && !a.node(sa).synthetic) ga = locate(anchors, a.node(sa).span, false);
    if (sb != kNoNode && !b.node(sb).synthetic) gb = locate(anchors, b.node(sb).span, true);
    if (op.kind == EditKind::Update && ga && gb) {
      ga->i = std::min(ga->i, gb->i);
      ga->j = std::max(ga->j, gb->j);
      gb.reset();
    }
    if (ga) {
      ga->ops = {r};
      ga->core_a = a.node(sa).span;
      if (op.kind == EditKind::Update) ga->core_b = b.node(sb).span;
      gaps.push_back(*ga);
    }
    if (gb) {
      gb->ops = {r};
      gb->core_b = b.node(sb).span;
      gaps.push_back(*gb);
    }
  }
  std::sort(gaps.begin(), gaps.end(), [](const GapInterval& x, const GapInterval& y) {
    return std::tie(x.i, x.j) < std::tie(y.i, y.j);
  });
  std::vector<GapInterval> merged;
  for (GapInterval& g : gaps) {
    if (!merged.empty() && g.i < merged.back().j) {
      merged.back().j = std::max(merged.back().j, g.j);
      merged.back().ops.insert(merged.back().ops.end(), g.ops.begin(), g.ops.end());
      widen(merged.back().core_a, g.core_a);
      widen(merged.back().core_b, g.core_b);
    } else {
      merged.push_back(std::move(g));
    }
  }

  std::vector<std::vector<std::size_t>> inst_ops;
  for (const auto& inst : diff.instances) {
    inst_ops.push_back(instance_op_indices(script, inst));
  }

  std::string_view at = a.text();
  std::string_view bt = b.text();
  long k = static_cast<long>(anchors.size());
  std::vector<ChangeRegion> out;
  for (GapInterval& g : merged) {
    std::size_t as = g.i < 0 ? 0 : anchors[g.i].a.end;
    std::size_t ae = g.j >= k ? at.size() : anchors[g.j].a.begin;
    std::size_t bs = g.i < 0 ? 0 : anchors[g.i].b.end;
    std::size_t be = g.j >= k ? bt.size() : anchors[g.j].b.begin;
    trim_common_tokens(at, bt, as, ae, bs, be, g.core_a, g.core_b);
    while (as < ae && bs < be && is_space(at[as]) && at[as] == bt[bs]) {
      ++as;
      ++bs;
    }
    while (as < ae && bs < be && is_space(at[ae - 1]) && at[ae - 1] == bt[be - 1]) {
      --ae;
      --be;
    }
    if (at.substr(as, ae - as) == bt.substr(bs, be - bs)) continue;
    ChangeRegion region;
    region.span = {as, ae};
    region.target_span = {bs, be};
    region.replacement = std::string(bt.substr(bs, be - bs));
    region.counterpart = counterpart_index;
    std::sort(g.ops.begin(), g.ops.end());
    g.ops.erase(std::unique(g.ops.begin(), g.ops.end()), g.ops.end());
    region.ops = g.ops;
    std::size_t best_size = 0;
    bool have = false;
    for (std::size_t n = 0; n < diff.instances.size(); ++n) {
      bool hit = std::any_of(inst_ops[n].begin(), inst_ops[n].end(), [&](std::size_t op) {
        return std::binary_search(region.ops.begin(), region.ops.end(), op);
      });
      if (!hit) continue;
      const AdaptationInstance& inst = diff.instances[n];
      region.categories.insert(inst.category);
      std::size_t size = inst.example_span.size() + inst.counterpart_span.size();
      if (!have || size > best_size) {
        have = true;
        best_size = size;
        region.category = inst.category;
      }
    }
    if (!have) region.categories.insert(region.category);
    out.push_back(std::move(region));
  }
  return out;
}

std::string apply_regions(std::string_view text,
                          const std::vector<ChangeRegion>& regions) {
  std::vector<const ChangeRegion*> sorted;
  for (const auto& r : regions) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const ChangeRegion* x, const ChangeRegion* y) {
    return std::tie(x->span.begin, x->span.end) < std::tie(y->span.begin, y->span.end);
  });
  std::string out;
  std::size_t pos = 0;
  for (const ChangeRegion* r : sorted) {
    if (r->span.begin < pos || r->span.end > text.size()) {
      throw std::invalid_argument("overlapping or out-of-range change regions");
    }
    out.append(text.substr(pos, r->span.begin - pos));
    out.append(r->replacement);
    pos = r->span.end;
  }
  out.append(text.substr(pos));
  return out;
}

LiftedTemplate lift_template(const SyntaxTree& example,
                             const std::vector<CounterpartDiff>& diffs,
                             std::string example_id) {
  if (diffs.empty()) throw EmptyDiffSet();
  LiftedTemplate tmpl;
  tmpl.example_id = std::move(example_id);
  tmpl.example_text = std::string(example.text());
  const std::string& text = tmpl.example_text;
  for (std::size_t c = 0; c < diffs.size(); ++c) {
    tmpl.counterparts.push_back(diffs[c].info);
    tmpl.regions.push_back(change_regions(diffs[c], c));
  }

  // Group overlapping regions across counterparts until nothing changes.
  std::vector<Span> groups;
  for (const auto& per : tmpl.regions) {
    for (const auto& r : per) groups.push_back(r.span);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(groups.begin(), groups.end(), [](const Span& x, const Span& y) {
      return std::tie(x.begin, x.end) < std::tie(y.begin, y.end);
    });
    std::vector<Span> next;
    for (const Span& g : groups) {
      bool absorbed = false;
      for (Span& n : next) {
        if (spans_touch(n, g)) {
          if (!(n == g)) changed = true;
          n = span_union(n, g);
          absorbed = true;
          break;
        }
      }
      if (!absorbed) next.push_back(g);
    }
    groups = std::move(next);
  }
  std::sort(groups.begin(), groups.end(), [](const Span& x, const Span& y) {
    return std::tie(x.begin, x.end) < std::tie(y.begin, y.end);
  });

  auto group_of = [&](const Span& r) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const Span& G = groups[g];
      if (G == r || G.contains(r)) return g;
    }
    return groups.size();
  };

  std::vector<HotSpot> hotspots;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const Span& g = groups[gi];
    HotSpot hs;
    hs.span = g;
    std::string original = text.substr(g.begin, g.size());
    std::vector<bool> touched(diffs.size(), false);
    std::map<std::string, std::size_t> by_content;
    std::vector<long> best_size;
    for (std::size_t c = 0; c < diffs.size(); ++c) {
      std::vector<ChangeRegion> local;
      for (const auto& r : tmpl.regions[c]) {
        if (group_of(r.span) != gi) continue;
        ChangeRegion shifted = r;
        shifted.span = {r.span.begin - g.begin, r.span.end - g.begin};
        local.push_back(std::move(shifted));
      }
      if (local.empty()) continue;
      std::string content = apply_regions(original, local);
      if (content == original) continue;
      touched[c] = true;
      auto [it, inserted] = by_content.emplace(content, hs.options.size());
      if (inserted) {
        Option opt;
        opt.content = content;
        hs.options.push_back(std::move(opt));
        best_size.push_back(-1);
      }
      Option& opt = hs.options[it->second];
      opt.contributors.push_back(c);
      for (const auto& r : local) {
        opt.categories.insert(r.categories.begin(), r.categories.end());
        long size = static_cast<long>(r.span.size() + r.replacement.size());
        if (size > best_size[it->second]) {
          best_size[it->second] = size;
          opt.category = r.category;
        }
      }
    }
    if (hs.options.empty()) continue;
    for (Option& o : hs.options) o.frequency = o.contributors.size();
    auto max_stars = [&](const Option& o) {
      std::int64_t best = 0;
      for (std::size_t c : o.contributors) best = std::max(best, diffs[c].info.stars);
      return best;
    };
    std::stable_sort(hs.options.begin(), hs.options.end(),
                     [&](const Option& x, const Option& y) {
                       if (x.frequency != y.frequency) return x.frequency > y.frequency;
                       std::int64_t sx = max_stars(x);
                       std::int64_t sy = max_stars(y);
                       if (sx != sy) return sx > sy;
                       return x.content < y.content;
                     });
    Option orig;
    orig.content = original;
    orig.original = true;
    for (std::size_t c = 0; c < diffs.size(); ++c) {
      if (!touched[c]) orig.contributors.push_back(c);
    }
    orig.frequency = orig.contributors.size();
    hs.options.insert(hs.options.begin(), std::move(orig));
    hotspots.push_back(std::move(hs));
  }
  tmpl.hotspots = std::move(hotspots);

  std::size_t pos = 0;
  for (std::size_t h = 0; h < tmpl.hotspots.size(); ++h) {
    const Span& s = tmpl.hotspots[h].span;
    if (s.begin > pos) {
      tmpl.segments.push_back({Segment::Kind::Text, text.substr(pos, s.begin - pos), 0});
    }
    tmpl.segments.push_back({Segment::Kind::HotSpot, {}, h});
    pos = s.end;
  }
  if (pos < text.size() || tmpl.segments.empty()) {
    tmpl.segments.push_back({Segment::Kind::Text, text.substr(pos), 0});
  }
  build_defuse_edges(tmpl, example, diffs);
  return tmpl;
}

void build_defuse_edges(LiftedTemplate& tmpl, const SyntaxTree& example,
                        const std::vector<CounterpartDiff>& diffs) {
  tmpl.edges.clear();
  std::set<std::string> example_defs = fact_names(collect_facts(example).defs);
  struct Facts {
    std::set<std::string> defs;
    std::set<std::string> uses;
  };
  // (hotspot, option, counterpart) -> facts of that counterpart's fragment.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Facts> frag;
  for (std::size_t h = 0; h < tmpl.hotspots.size(); ++h) {
    HotSpot& hs = tmpl.hotspots[h];
    for (std::size_t o = 0; o < hs.options.size(); ++o) {
      Option& opt = hs.options[o];
      opt.defines.clear();
      opt.uses.clear();
      if (opt.original) continue;
      for (std::size_t c : opt.contributors) {
        if (c >= diffs.size() || c >= tmpl.regions.size()) continue;
        const SyntaxTree& b = *diffs[c].script.target;
        Facts f;
        for (const auto& r : tmpl.regions[c]) {
          if (!hs.span.contains(r.span)) continue;
          SemanticFacts sf = collect_facts(b, r.target_span);
          for (const auto& [v, sites] : sf.defs) f.defs.insert(v);
          for (const auto& [v, sites] : sf.uses) f.uses.insert(v);
        }
        opt.defines.insert(f.defs.begin(), f.defs.end());
        opt.uses.insert(f.uses.begin(), f.uses.end());
        frag[{h, o, c}] = std::move(f);
      }
    }
  }
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::string>>
      seen;
  for (const auto& [key, f] : frag) {
    auto [h, o, c] = key;
    for (const std::string& v : f.uses) {
      if (f.defs.contains(v) || example_defs.contains(v)) continue;
      for (const auto& [key2, f2] : frag) {
        auto [h2, o2, c2] = key2;
        if (c2 != c || h2 == h || !f2.defs.contains(v)) continue;
        if (!seen.insert({h, o, h2, o2, v}).second) continue;
        tmpl.edges.push_back({h, o, h2, o2, v, c});
      }
    }
  }
  std::sort(tmpl.edges.begin(), tmpl.edges.end(),
            [](const DefUseEdge& x, const DefUseEdge& y) {
              return std::tie(x.from_hotspot, x.from_option, x.to_hotspot, x.to_option,
                              x.variable) < std::tie(y.from_hotspot, y.from_option,
                                                     y.to_hotspot, y.to_option,
                                                     y.variable);
            });
}

SelectionState::SelectionState(const LiftedTemplate& tmpl)
    : chosen_(tmpl.hotspots.size(), 0), explicit_(tmpl.hotspots.size(), false) {
  for (std::size_t c = 0; c < tmpl.counterparts.size(); ++c) active_.insert(c);
}

std::size_t SelectionState::history_depth() const {
  std::size_t n = 0;
  for (const SelectionState* s = previous_.get(); s; s = s->previous_.get()) ++n;
  return n;
}

namespace {

bool defined_by_choice(const LiftedTemplate& tmpl, const std::vector<std::size_t>& chosen,
                       const std::string& v) {
  for (std::size_t h = 0; h < chosen.size(); ++h) {
    if (chosen[h] == 0) continue;
    if (tmpl.hotspots[h].options[chosen[h]].defines.contains(v)) return true;
  }
  return false;
}

}  // namespace

SelectionState select_option(const LiftedTemplate& tmpl, const SelectionState& state,
                             std::size_t hotspot, std::size_t option) {
  if (hotspot >= tmpl.hotspots.size()) throw InvalidSelection("no such hot spot");
  if (option >= tmpl.hotspots[hotspot].options.size()) {
    throw InvalidSelection("no such option");
  }
  if (state.chosen_.size() != tmpl.hotspots.size()) {
    throw InvalidSelection("selection state belongs to another template");
  }
  SelectionState next = state;
  next.previous_ = std::make_shared<const SelectionState>(state);
  next.chosen_[hotspot] = option;
  next.explicit_[hotspot] = true;
  std::deque<std::pair<std::size_t, std::size_t>> queue{{hotspot, option}};
  while (!queue.empty()) {
    auto [h, o] = queue.front();
    queue.pop_front();
    for (const DefUseEdge& e : tmpl.edges) {
      if (e.from_hotspot != h || e.from_option != o) continue;
      if (next.chosen_[e.to_hotspot] == e.to_option) continue;
      if (defined_by_choice(tmpl, next.chosen_, e.variable)) continue;
      if (next.explicit_[e.to_hotspot]) {
        throw ConflictingSelection("option at hot spot " + std::to_string(h) +
                                   " needs `" + e.variable +
                                   "` from a different option at hot spot " +
                                   std::to_string(e.to_hotspot));
      }
      next.chosen_[e.to_hotspot] = e.to_option;
      queue.emplace_back(e.to_hotspot, e.to_option);
    }
  }
  for (const DefUseEdge& e : tmpl.edges) {
    if (next.chosen_[e.from_hotspot] != e.from_option) continue;
    if (!defined_by_choice(tmpl, next.chosen_, e.variable)) {
      throw ConflictingSelection("selection leaves `" + e.variable + "` undefined");
    }
  }
  std::set<std::size_t> active;
  for (std::size_t c = 0; c < tmpl.counterparts.size(); ++c) active.insert(c);
  for (std::size_t h = 0; h < next.chosen_.size(); ++h) {
    if (next.chosen_[h] == 0) continue;
    const auto& contrib = tmpl.hotspots[h].options[next.chosen_[h]].contributors;
    std::set<std::size_t> keep;
    for (std::size_t c : contrib) {
      if (active.contains(c)) keep.insert(c);
    }
    active = std::move(keep);
  }
  next.active_ = std::move(active);
  return next;
}

SelectionState undo(const SelectionState& state) {
  if (!state.previous_) throw EmptyHistory();
  return *state.previous_;
}

std::string render(const LiftedTemplate& tmpl, const SelectionState& state) {
  std::string out;
  for (const Segment& s : tmpl.segments) {
    if (s.kind == Segment::Kind::Text) {
      out += s.text;
    } else {
      std::size_t o = s.hotspot < state.chosen().size() ? state.chosen()[s.hotspot] : 0;
      out += tmpl.hotspots.at(s.hotspot).options.at(o).content;
    }
  }
  return out;
}

std::size_t active_frequency(const LiftedTemplate& tmpl, const SelectionState& state,
                             std::size_t hotspot, std::size_t option) {
  const auto& contrib = tmpl.hotspots.at(hotspot).options.at(option).contributors;
  return static_cast<std::size_t>(
      std::count_if(contrib.begin(), contrib.end(), [&](std::size_t c) {
        return state.active_counterparts().contains(c);
      }));
}

TemplateStats template_stats(const LiftedTemplate& tmpl) {
  TemplateStats st;
  const std::string& t = tmpl.example_text;
  st.lines = static_cast<std::size_t>(std::count(t.begin(), t.end(), '\n'));
  if (!t.empty() && t.back() != '\n') ++st.lines;
  st.hotspot_count = tmpl.hotspots.size();
  if (!tmpl.hotspots.empty()) {
    std::size_t total = 0;
    for (const auto& h : tmpl.hotspots) total += h.options.size();
    st.mean_options = static_cast<double>(total) / static_cast<double>(st.hotspot_count);
  }
  return st;
}

std::string template_to_json(const LiftedTemplate& tmpl) {
  using nlohmann::json;
  json doc;
  doc["format"] = "exstack-template";
  doc["version"] = kTemplateFormatVersion;
  doc["example_id"] = tmpl.example_id;
  doc["example_text"] = tmpl.example_text;
  json segments = json::array();
  for (const Segment& s : tmpl.segments) {
    if (s.kind == Segment::Kind::Text) {
      segments.push_back({{"kind", "text"}, {"text", s.text}});
    } else {
      segments.push_back({{"kind", "hotspot"}, {"hotspot", s.hotspot}});
    }
  }
  doc["segments"] = std::move(segments);
  json hotspots = json::array();
  for (const HotSpot& h : tmpl.hotspots) {
    json options = json::array();
    for (const Option& o : h.options) {
      json cats = json::array();
      for (Category c : o.categories) cats.push_back(category_name(c));
      options.push_back({{"content", o.content},
                         {"freq", o.frequency},
                         {"original", o.original},
                         {"category", category_name(o.category)},
                         {"color", category_color(o.category)},
                         {"categories", std::move(cats)},
                         {"contributors", o.contributors},
                         {"defines", o.defines},
                         {"uses", o.uses}});
    }
    hotspots.push_back({{"span", {h.span.begin, h.span.end}},
                        {"options", std::move(options)}});
  }
  doc["hotspots"] = std::move(hotspots);
  json edges = json::array();
  for (const DefUseEdge& e : tmpl.edges) {
    edges.push_back({{"from", {{"hotspot", e.from_hotspot}, {"option", e.from_option}}},
                     {"to", {{"hotspot", e.to_hotspot}, {"option", e.to_option}}},
                     {"variable", e.variable},
                     {"counterpart", e.counterpart}});
  }
  doc["edges"] = std::move(edges);
  json cps = json::array();
  for (const CounterpartInfo& c : tmpl.counterparts) {
    cps.push_back({{"id", c.id},
                   {"repo", c.repo},
                   {"path", c.path},
                   {"url", c.url},
                   {"stars", c.stars},
                   {"contributors", c.contributors},
                   {"watches", c.watches}});
  }
  doc["counterparts"] = std::move(cps);
  return doc.dump(2);
}

LiftedTemplate template_from_json(std::string_view text) {
  using nlohmann::json;
  LiftedTemplate tmpl;
  try {
    json doc = json::parse(text);
    if (doc.value("format", "") != "exstack-template") {
      throw std::invalid_argument("not a template document");
    }
    if (doc.at("version").get<int>() != kTemplateFormatVersion) {
      throw std::invalid_argument("unsupported template version");
    }
    tmpl.example_id = doc.value("example_id", "");
    tmpl.example_text = doc.at("example_text").get<std::string>();
    for (const auto& h : doc.at("hotspots")) {
      HotSpot hs;
      hs.span = {h.at("span").at(0).get<std::size_t>(),
                 h.at("span").at(1).get<std::size_t>()};
      for (const auto& o : h.at("options")) {
        Option opt;
        opt.content = o.at("content").get<std::string>();
        opt.frequency = o.at("freq").get<std::size_t>();
        opt.original = o.value("original", false);
        auto cat = category_from_name(o.at("category").get<std::string>());
        if (!cat) throw std::invalid_argument("unknown category");
        opt.category = *cat;
        for (const auto& c : o.value("categories", json::array())) {
          auto cc = category_from_name(c.get<std::string>());
          if (!cc) throw std::invalid_argument("unknown category");
          opt.categories.insert(*cc);
        }
        opt.contributors = o.at("contributors").get<std::vector<std::size_t>>();
        opt.defines = o.value("defines", std::set<std::string>{});
        opt.uses = o.value("uses", std::set<std::string>{});
        hs.options.push_back(std::move(opt));
      }
      tmpl.hotspots.push_back(std::move(hs));
    }
    for (const auto& s : doc.at("segments")) {
      Segment seg;
      if (s.at("kind") == "text") {
        seg.text = s.at("text").get<std::string>();
      } else {
        seg.kind = Segment::Kind::HotSpot;
        seg.hotspot = s.at("hotspot").get<std::size_t>();
        if (seg.hotspot >= tmpl.hotspots.size()) {
          throw std::invalid_argument("segment references a missing hot spot");
        }
      }
      tmpl.segments.push_back(std::move(seg));
    }
    for (const auto& e : doc.at("edges")) {
      tmpl.edges.push_back({e.at("from").at("hotspot").get<std::size_t>(),
                            e.at("from").at("option").get<std::size_t>(),
                            e.at("to").at("hotspot").get<std::size_t>(),
                            e.at("to").at("option").get<std::size_t>(),
                            e.at("variable").get<std::string>(),
                            e.at("counterpart").get<std::size_t>()});
    }
    for (const auto& c : doc.at("counterparts")) {
      CounterpartInfo info;
      info.id = c.at("id").get<std::string>();
      info.repo = c.value("repo", "");
      info.path = c.value("path", "");
      info.url = c.value("url", "");
      info.stars = c.value("stars", std::int64_t{0});
      info.contributors = c.value("contributors", std::int64_t{0});
      info.watches = c.value("watches", std::int64_t{0});
      tmpl.counterparts.push_back(std::move(info));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed template: ") + e.what());
  }
  return tmpl;
}

}  // namespace exstack
