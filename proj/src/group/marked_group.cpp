#include "hsp/group/marked_group.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw invalid_input_error(msg);
}

}  // namespace

GroupPtr MarkedGroup::make_trivial(std::string name) {
  auto g = std::make_shared<MarkedGroup>(MarkedGroup{});
  g->kind_ = Kind::trivial;
  g->name_ = std::move(name);
  return g;
}

GroupPtr MarkedGroup::make_free(std::string name,
                                std::vector<std::string> gens) {
  require(!gens.empty(), "free group needs at least one generator");
  auto g = std::make_shared<MarkedGroup>(MarkedGroup{});
  g->kind_ = Kind::free;
  g->name_ = std::move(name);
  g->gens_ = std::move(gens);
  return g;
}

GroupPtr MarkedGroup::make_free_abelian(std::string name,
                                        std::vector<std::string> gens) {
  require(!gens.empty(), "free-abelian group needs at least one generator");
  auto g = std::make_shared<MarkedGroup>(MarkedGroup{});
  g->kind_ = Kind::free_abelian;
  g->name_ = std::move(name);
  g->gens_ = std::move(gens);
  return g;
}

std::shared_ptr<MarkedGroup> MarkedGroup::build_product(
    std::string name, std::vector<GroupPtr> factors) {
  require(factors.size() >= 2, "products need at least two factors");
  auto g = std::make_shared<MarkedGroup>(MarkedGroup{});
  g->name_ = std::move(name);
  g->factors_ = std::move(factors);
  for (const auto& f : g->factors_) {
    g->offsets_.push_back(g->gens_.size());
    for (const auto& gn : f->generator_names()) g->gens_.push_back(gn);
  }
  std::vector<std::string> sorted = g->gens_;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "generator names must be distinct across factors");
  return g;
}

GroupPtr MarkedGroup::make_direct_product(std::string name,
                                          std::vector<GroupPtr> factors) {
  auto g = build_product(std::move(name), std::move(factors));
  g->kind_ = Kind::direct_product;
  return g;
}

GroupPtr MarkedGroup::make_free_product(std::string name,
                                        std::vector<GroupPtr> factors) {
  auto g = build_product(std::move(name), std::move(factors));
  g->kind_ = Kind::free_product;
  return g;
}

std::size_t MarkedGroup::factor_of_generator(std::size_t i) const {
  for (std::size_t f = factors_.size(); f-- > 0;)
    if (i >= offsets_[f]) return f;
  throw invalid_input_error("generator index out of range");
}

Element MarkedGroup::identity() const {
  Element e;
  e.group = this;
  switch (kind_) {
    case Kind::trivial:
    case Kind::free:
    case Kind::free_product:
      break;
    case Kind::free_abelian:
      e.vec.assign(ngens(), 0);
      break;
    case Kind::direct_product:
      for (const auto& f : factors_) e.comps.push_back(f->identity());
      break;
  }
  return e;
}

Element MarkedGroup::generator(std::size_t i) const {
  require(i < ngens(), "generator index out of range");
  Element e = identity();
  switch (kind_) {
    case Kind::trivial:
      throw invalid_input_error("trivial group has no generators");
    case Kind::free:
      e.word = {Letter(i + 1)};
      break;
    case Kind::free_abelian:
      e.vec[i] = 1;
      break;
    case Kind::direct_product: {
      std::size_t f = factor_of_generator(i);
      e.comps[f] = factors_[f]->generator(i - offsets_[f]);
      break;
    }
    case Kind::free_product: {
      std::size_t f = factor_of_generator(i);
      e.syls.push_back({f, factors_[f]->generator(i - offsets_[f])});
      break;
    }
  }
  return e;
}

bool Element::operator==(const Element& other) const {
  if (group != other.group) return false;
  return word == other.word && vec == other.vec && comps == other.comps &&
         syls == other.syls;
}

bool is_identity(const Element& e) {
  switch (e.group->kind()) {
    case MarkedGroup::Kind::trivial: return true;
    case MarkedGroup::Kind::free: return e.word.empty();
    case MarkedGroup::Kind::free_abelian:
      return std::all_of(e.vec.begin(), e.vec.end(),
                         [](std::int64_t x) { return x == 0; });
    case MarkedGroup::Kind::direct_product:
      return std::all_of(e.comps.begin(), e.comps.end(),
                         [](const Element& c) { return is_identity(c); });
    case MarkedGroup::Kind::free_product: return e.syls.empty();
  }
  return true;
}

Element multiply(const Element& a, const Element& b) {
  require(a.group == b.group, "multiply: group mismatch");
  const MarkedGroup& g = *a.group;
  Element out = g.identity();
  switch (g.kind()) {
    case MarkedGroup::Kind::trivial:
      break;
    case MarkedGroup::Kind::free: {
      out.word = a.word;
      for (Letter x : b.word) {
        if (!out.word.empty() && out.word.back() == -x)
          out.word.pop_back();
        else
          out.word.push_back(x);
      }
      break;
    }
    case MarkedGroup::Kind::free_abelian: {
      out.vec = a.vec;
      for (std::size_t i = 0; i < out.vec.size(); ++i) out.vec[i] += b.vec[i];
      break;
    }
    case MarkedGroup::Kind::direct_product: {
      for (std::size_t i = 0; i < g.factors().size(); ++i)
        out.comps[i] = multiply(a.comps[i], b.comps[i]);
      break;
    }
    case MarkedGroup::Kind::free_product: {
      out.syls = a.syls;
      for (const auto& syl : b.syls) {
        if (!out.syls.empty() && out.syls.back().first == syl.first) {
          Element merged = multiply(out.syls.back().second, syl.second);
          out.syls.pop_back();
          if (!is_identity(merged)) out.syls.push_back({syl.first, merged});
        } else {
          out.syls.push_back(syl);
        }
      }
      break;
    }
  }
  return out;
}

Element inverse(const Element& a) {
  const MarkedGroup& g = *a.group;
  Element out = g.identity();
  switch (g.kind()) {
    case MarkedGroup::Kind::trivial:
      break;
    case MarkedGroup::Kind::free:
      out.word.reserve(a.word.size());
      for (auto it = a.word.rbegin(); it != a.word.rend(); ++it)
        out.word.push_back(-*it);
      break;
    case MarkedGroup::Kind::free_abelian:
      out.vec = a.vec;
      for (auto& x : out.vec) x = -x;
      break;
    case MarkedGroup::Kind::direct_product:
      for (std::size_t i = 0; i < a.comps.size(); ++i)
        out.comps[i] = inverse(a.comps[i]);
      break;
    case MarkedGroup::Kind::free_product:
      for (auto it = a.syls.rbegin(); it != a.syls.rend(); ++it)
        out.syls.push_back({it->first, inverse(it->second)});
      break;
  }
  return out;
}

Element power(const Element& a, std::int64_t n) {
  Element base = n < 0 ? inverse(a) : a;
  std::int64_t k = n < 0 ? -n : n;
  Element out = a.group->identity();
  for (std::int64_t i = 0; i < k; ++i) out = multiply(out, base);
  return out;
}

Word to_word(const Element& e) {
  const MarkedGroup& g = *e.group;
  Word w;
  switch (g.kind()) {
    case MarkedGroup::Kind::trivial:
      break;
    case MarkedGroup::Kind::free:
      w = e.word;
      break;
    case MarkedGroup::Kind::free_abelian:
      for (std::size_t i = 0; i < e.vec.size(); ++i) {
        std::int64_t k = e.vec[i];
        for (std::int64_t j = 0; j < (k < 0 ? -k : k); ++j)
          w.push_back(k < 0 ? -Letter(i + 1) : Letter(i + 1));
      }
      break;
    case MarkedGroup::Kind::direct_product:
      for (std::size_t f = 0; f < e.comps.size(); ++f) {
        Word sub = to_word(e.comps[f]);
        for (Letter x : sub) {
          Letter off = Letter(g.generator_offset(f));
          w.push_back(x > 0 ? x + off : x - off);
        }
      }
      break;
    case MarkedGroup::Kind::free_product:
      for (const auto& [f, part] : e.syls) {
        Word sub = to_word(part);
        for (Letter x : sub) {
          Letter off = Letter(g.generator_offset(f));
          w.push_back(x > 0 ? x + off : x - off);
        }
      }
      break;
  }
  return w;
}

Element from_word(const MarkedGroup& g, const Word& w) {
  Element e = g.identity();
  for (Letter x : w) {
    require(x != 0 && std::size_t(x > 0 ? x : -x) <= g.ngens(),
            "letter out of range");
    Element gen = g.generator(std::size_t((x > 0 ? x : -x) - 1));
    e = multiply(e, x > 0 ? gen : inverse(gen));
  }
  return e;
}

std::size_t element_length(const Element& e) { return to_word(e).size(); }

namespace {

void print_run(std::ostringstream& os, const std::string& name,
               std::int64_t exp, bool& first) {
  if (exp == 0) return;
  if (!first) os << '*';
  first = false;
  os << name;
  if (exp != 1) os << '^' << exp;
}

void print_into(std::ostringstream& os, const Element& e, bool& first) {
  const MarkedGroup& g = *e.group;
  switch (g.kind()) {
    case MarkedGroup::Kind::trivial:
      break;
    case MarkedGroup::Kind::free: {
      std::size_t i = 0;
      while (i < e.word.size()) {
        std::size_t j = i;
        while (j < e.word.size() && e.word[j] == e.word[i]) ++j;
        Letter x = e.word[i];
        std::size_t gi = std::size_t((x > 0 ? x : -x) - 1);
        print_run(os, g.generator_names()[gi],
                  (x > 0 ? 1 : -1) * std::int64_t(j - i), first);
        i = j;
      }
      break;
    }
    case MarkedGroup::Kind::free_abelian:
      for (std::size_t i = 0; i < e.vec.size(); ++i)
        print_run(os, g.generator_names()[i], e.vec[i], first);
      break;
    case MarkedGroup::Kind::direct_product:
      for (const auto& c : e.comps) print_into(os, c, first);
      break;
    case MarkedGroup::Kind::free_product:
      for (const auto& [f, part] : e.syls) {
        (void)f;
        print_into(os, part, first);
      }
      break;
  }
}

}  // namespace

std::string print_element(const Element& e) {
  std::ostringstream os;
  bool first = true;
  print_into(os, e, first);
  if (first) return "1";
  return os.str();
}

Element parse_word(const MarkedGroup& g, const std::string& text) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.ngens(); ++i) index[g.generator_names()[i]] = i;
  Element e = g.identity();
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    std::string name = token;
    std::int64_t exp = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      exp = std::stoll(token.substr(caret + 1));
    }
    if (name == "1" && exp == 1) {
      token.clear();
      return;
    }
    auto it = index.find(name);
    require(it != index.end(), "unknown generator: " + name);
    e = multiply(e, power(g.generator(it->second), exp));
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '*' || c == '\t')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return e;
}

Element apply_hom(const Element& e, const std::vector<Element>& images) {
  require(images.size() == e.group->ngens(),
          "apply_hom: image count mismatch");
  Word w = to_word(e);
  if (w.empty()) {
    if (images.empty())
      throw invalid_input_error("apply_hom: cannot infer target group");
    return images[0].group->identity();
  }
  Element out = images[0].group->identity();
  for (Letter x : w) {
    const Element& img = images[std::size_t((x > 0 ? x : -x) - 1)];
    out = multiply(out, x > 0 ? img : inverse(img));
  }
  return out;
}

NeighborOracle ball_oracle(GroupPtr group, std::vector<Element> gens) {
  require(!gens.empty(), "ball_oracle: empty generating set");
  for (const auto& s : gens) {
    require(s.group == group.get(), "ball_oracle: generator group mismatch");
    bool has_inverse = false;
    Element inv = inverse(s);
    for (const auto& t : gens)
      if (t == inv) {
        has_inverse = true;
        break;
      }
    require(has_inverse, "ball_oracle: generating set is not symmetric");
  }
  // Drop identity generators; they would create self-loops.
  std::vector<Element> clean;
  for (auto& s : gens)
    if (!is_identity(s)) clean.push_back(std::move(s));
  auto cache = std::make_shared<std::unordered_map<std::string, Element>>();
  (*cache)[print_element(group->identity())] = group->identity();
  return [group, clean, cache](const std::string& label) {
    auto it = cache->find(label);
    if (it == cache->end())
      throw invalid_input_error("ball_oracle: unknown label " + label);
    std::vector<std::string> out;
    for (const auto& s : clean) {
      Element n = multiply(it->second, s);
      std::string l = print_element(n);
      cache->emplace(l, std::move(n));
      out.push_back(std::move(l));
    }
    return out;
  };
}

}  // namespace hsp
