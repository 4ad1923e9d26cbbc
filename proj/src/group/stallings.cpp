#include "hsp/group/stallings.hpp"

#include <algorithm>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

Word invert_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

Word concat_reduced(const Word& a, const Word& b) {
  Word out = a;
  for (Letter x : b) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

}  // namespace

StallingsEngine::StallingsEngine(GroupPtr ambient, GroupPtr abstract,
                                 std::vector<Element> images,
                                 std::size_t coset_budget)
    : SubgroupEngine(std::move(ambient), std::move(abstract),
                     std::move(images)),
      coset_budget_(coset_budget) {
  if (ambient_->kind() != MarkedGroup::Kind::free)
    throw invalid_input_error("stallings engine needs a free ambient group");
  build_core(images_);
  // The declared edge group must be free of the core's rank; a mismatch
  // would make expressions unsound.
  if (rank_ != abstract_->ngens())
    throw invalid_input_error(
        "subgroup rank " + std::to_string(rank_) + " does not match the " +
        std::to_string(abstract_->ngens()) + " declared generators");
  if (abstract_->ngens() >= 2 &&
      abstract_->kind() != MarkedGroup::Kind::free)
    throw invalid_input_error(
        "free-group subgroups of rank >= 2 must be declared free");

  // Letter order for canonical shortlex reps: sort by printed form.
  for (std::size_t i = 1; i <= ambient_->ngens(); ++i) {
    letter_order_.push_back(Letter(i));
    letter_order_.push_back(-Letter(i));
  }
  auto letter_print = [this](Letter x) {
    std::string s = ambient_->generator_names()[std::size_t(std::abs(x)) - 1];
    if (x < 0) s += "^-1";
    return s;
  };
  std::sort(letter_order_.begin(), letter_order_.end(),
            [&](Letter a, Letter b) { return letter_print(a) < letter_print(b); });
}

void StallingsEngine::build_core(const std::vector<Element>& images) {
  // Wedge of generator loops over a multimap, then fold to completion.
  std::vector<std::multimap<Letter, Edge>> m;
  m.emplace_back();  // base
  base_ = 0;

  auto add_edge = [&](int s, Letter x, int t, const Word& h) {
    m[s].insert({x, Edge{t, h}});
    m[t].insert({-x, Edge{s, invert_word(h)}});
  };

  for (std::size_t i = 0; i < images.size(); ++i) {
    Word w = to_word(images[i]);
    if (w.empty())
      throw invalid_input_error(
          "identity generator in a free-subgroup engine");
    int cur = base_;
    for (std::size_t j = 0; j < w.size(); ++j) {
      int nxt;
      if (j + 1 == w.size()) {
        nxt = base_;
      } else {
        m.emplace_back();
        nxt = int(m.size()) - 1;
      }
      add_edge(cur, w[j], nxt, j == 0 ? Word{Letter(i + 1)} : Word{});
      cur = nxt;
    }
  }

  // Erase one entry matching (letter, to, hist) exactly.
  auto erase_one = [&](int s, Letter x, int to, const Word& h) {
    auto [lo, hi] = m[s].equal_range(x);
    for (auto it = lo; it != hi; ++it)
      if (it->second.to == to && it->second.hist == h) {
        m[s].erase(it);
        return true;
      }
    return false;
  };

  std::vector<char> dead(m.size(), 0);
  std::deque<int> work;
  for (std::size_t s = 0; s < m.size(); ++s) work.push_back(int(s));

  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    if (dead[s]) continue;
    // find a duplicated letter
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = m[s].begin(); it != m[s].end();) {
        auto jt = std::next(it);
        if (jt == m[s].end() || jt->first != it->first) {
          it = jt;
          continue;
        }
        // two edges with the same letter
        Letter x = it->first;
        Edge e1 = it->second, e2 = jt->second;
        if (e1.to == e2.to && e1.hist == e2.hist) {
          // exact duplicate: drop one copy and its twin
          m[s].erase(jt);
          erase_one(e1.to, -x, s, invert_word(e1.hist));
          changed = true;
          break;
        }
        if (e1.to == e2.to) {
          // parallel edges, same endpoints: keep e1 (drops a redundancy
          // relation among the subgroup generators -- rejected later by the
          // rank check if the declaration disagrees)
          m[s].erase(jt);
          erase_one(e2.to, -x, s, invert_word(e2.hist));
          changed = true;
          break;
        }
        int live = e1.to, die = e2.to;
        Word die_hist = e2.hist;
        Word c = concat_reduced(invert_word(e1.hist), e2.hist);
        if (die == base_) {
          live = e2.to;
          die = e1.to;
          die_hist = e1.hist;
          c = invert_word(c);
        }
        // remove the dying parallel edge and its twin
        erase_one(s, x, die, die_hist);
        erase_one(die, -x, s, invert_word(die_hist));
        // rehome every edge at `die` onto `live`, correcting histories
        while (!m[die].empty()) {
          auto kt = m[die].begin();
          Letter y = kt->first;
          Edge f = kt->second;
          m[die].erase(kt);
          if (f.to == die) {
            // self-loop: its twin also lives here
            erase_one(die, -y, die, invert_word(f.hist));
            Word nh = concat_reduced(concat_reduced(c, f.hist), invert_word(c));
            add_edge(live, y, live, nh);
          } else {
            erase_one(f.to, -y, die, invert_word(f.hist));
            Word nh = concat_reduced(c, f.hist);
            add_edge(live, y, f.to, nh);
            work.push_back(f.to);
          }
        }
        dead[die] = 1;
        work.push_back(live);
        work.push_back(s);
        changed = true;
        break;
      }
    }
  }

  // Copy the folded multimaps into single-valued maps, renumbering away the
  // dead states but keeping the base at index 0.
  std::vector<int> renum(m.size(), -1);
  int next = 0;
  renum[base_] = next++;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!dead[i] && renum[i] < 0) renum[i] = next++;
  trans_.assign(std::size_t(next), {});
  std::size_t directed_edges = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (dead[i]) continue;
    for (const auto& [x, e] : m[i]) {
      trans_[std::size_t(renum[i])][x] = Edge{renum[std::size_t(e.to)], e.hist};
      ++directed_edges;
    }
  }
  base_ = 0;
  rank_ = directed_edges / 2 + 1 - trans_.size();
}

int StallingsEngine::trace(const Word& w, bool* ok) const {
  int s = base_;
  for (Letter x : w) {
    auto it = trans_[std::size_t(s)].find(x);
    if (it == trans_[std::size_t(s)].end()) {
      *ok = false;
      return s;
    }
    s = it->second.to;
  }
  *ok = true;
  return s;
}

bool StallingsEngine::contains(const Element& g) const {
  bool ok = false;
  int s = trace(to_word(g), &ok);
  return ok && s == base_;
}

std::optional<Word> StallingsEngine::express_word(const Element& g) const {
  Word w = to_word(g);
  int s = base_;
  Word phi;
  for (Letter x : w) {
    auto it = trans_[std::size_t(s)].find(x);
    if (it == trans_[std::size_t(s)].end()) return std::nullopt;
    phi = concat_reduced(phi, it->second.hist);
    s = it->second.to;
  }
  if (s != base_) return std::nullopt;
  return phi;
}

int StallingsEngine::schreier_trace(const Word& w) const {
  if (schreier_.empty()) {
    schreier_.resize(trans_.size());
    for (std::size_t s = 0; s < trans_.size(); ++s)
      for (const auto& [x, e] : trans_[s]) schreier_[s][x] = e.to;
    core_states_ = trans_.size();
    state_rep_.assign(trans_.size(), {});
    rep_known_.assign(trans_.size(), 0);
    // shortlex BFS over the finite core decides every core state's word
    rep_known_[std::size_t(base_)] = 1;
    std::deque<int> q = {base_};
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (Letter x : letter_order_) {
        auto it = schreier_[std::size_t(s)].find(x);
        if (it == schreier_[std::size_t(s)].end()) continue;
        int t = it->second;
        if (!rep_known_[std::size_t(t)]) {
          rep_known_[std::size_t(t)] = 1;
          state_rep_[std::size_t(t)] =
              concat_reduced(state_rep_[std::size_t(s)], Word{x});
          q.push_back(t);
        }
      }
    }
  }
  int s = base_;
  for (Letter x : w) {
    auto it = schreier_[std::size_t(s)].find(x);
    if (it != schreier_[std::size_t(s)].end()) {
      s = it->second;
      continue;
    }
    if (schreier_.size() >= coset_budget_)
      throw budget_error("coset enumeration budget exceeded");
    // fresh tail state: its canonical word is forced by the tree structure
    int t = int(schreier_.size());
    schreier_.emplace_back();
    state_rep_.push_back(concat_reduced(state_rep_[std::size_t(s)], Word{x}));
    rep_known_.push_back(1);
    schreier_[std::size_t(s)][x] = t;
    schreier_[std::size_t(t)][-x] = s;
    s = t;
  }
  return s;
}

void StallingsEngine::ensure_rep(int target) const {
  if (!rep_known_[std::size_t(target)])
    throw budget_error("coset BFS exhausted before reaching target");
}

Element StallingsEngine::right_coset_rep(const Element& g) const {
  int s = schreier_trace(to_word(g));
  ensure_rep(s);
  return from_word(*ambient_, state_rep_[std::size_t(s)]);
}

}  // namespace hsp
