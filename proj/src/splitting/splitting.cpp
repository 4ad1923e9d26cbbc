#include "hsp/splitting/splitting.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw invalid_input_error(msg);
}

}  // namespace

std::shared_ptr<Splitting> Splitting::amalgam(std::string name, GroupPtr A,
                                              GroupPtr B, GroupPtr C,
                                              EnginePtr engine_a,
                                              EnginePtr engine_b,
                                              bool double_flag) {
  auto s = std::shared_ptr<Splitting>(new Splitting());
  s->kind_ = Kind::amalgam;
  s->name_ = std::move(name);
  s->A_ = std::move(A);
  s->B_ = std::move(B);
  s->C_ = std::move(C);
  s->eng_a_ = std::move(engine_a);
  s->eng_b_ = std::move(engine_b);
  s->double_flag_ = double_flag;
  require(s->eng_a_->ambient() == s->A_.get(),
          "amalgam: engine_a must live in A");
  require(s->eng_b_->ambient() == s->B_.get(),
          "amalgam: engine_b must live in B");
  require(s->eng_a_->abstract_group().get() == s->C_.get() &&
              s->eng_b_->abstract_group().get() == s->C_.get(),
          "amalgam: both engines must present the same edge group");
  std::set<std::string> names(s->A_->generator_names().begin(),
                              s->A_->generator_names().end());
  for (const auto& g : s->B_->generator_names())
    require(names.insert(g).second,
            "generator name collision between vertex groups: " + g);
  require(!names.count("t"), "generator name 't' is reserved");
  s->trivial_ =
      s->eng_a_->is_whole_group() || s->eng_b_->is_whole_group();
  s->build_generating_set();
  return s;
}

std::shared_ptr<Splitting> Splitting::hnn(std::string name, GroupPtr A,
                                          GroupPtr C, EnginePtr engine_minus,
                                          EnginePtr engine_plus,
                                          bool stable_letter_central) {
  auto s = std::shared_ptr<Splitting>(new Splitting());
  s->kind_ = Kind::hnn;
  s->name_ = std::move(name);
  s->A_ = std::move(A);
  s->C_ = std::move(C);
  s->eng_a_ = std::move(engine_minus);
  s->eng_b_ = std::move(engine_plus);
  s->stable_central_ = stable_letter_central;
  require(s->eng_a_->ambient() == s->A_.get() &&
              s->eng_b_->ambient() == s->A_.get(),
          "hnn: both associated subgroups live in A");
  require(s->eng_a_->abstract_group().get() == s->C_.get() &&
              s->eng_b_->abstract_group().get() == s->C_.get(),
          "hnn: both engines must present the same edge group");
  for (const auto& g : s->A_->generator_names())
    require(g != "t", "generator name 't' is reserved for the stable letter");
  if (stable_letter_central) {
    for (std::size_t i = 0; i < s->C_->ngens(); ++i)
      require(s->eng_a_->generator_images()[i] ==
                  s->eng_b_->generator_images()[i],
              "stable-letter-central flag requires phi = id on generators");
  }
  s->trivial_ =
      s->eng_a_->is_whole_group() && s->eng_b_->is_whole_group();
  s->build_generating_set();
  return s;
}

void Splitting::require_nontrivial() const {
  if (trivial_)
    throw invalid_input_error(
        "trivial splitting (an edge group equals a vertex group); analysis "
        "refused");
}

void Splitting::build_generating_set() {
  auto push_elt = [&](GMul::Tag tag, const Element& e) {
    if (is_identity(e)) return;
    for (const auto& g : gens_)
      if (g.tag == tag && g.elt == e) return;
    GMul m;
    m.tag = tag;
    m.elt = e;
    m.print = print_element(e);
    gens_.push_back(std::move(m));
  };
  for (std::size_t i = 0; i < A_->ngens(); ++i) {
    push_elt(GMul::Tag::a_elt, A_->generator(i));
    push_elt(GMul::Tag::a_elt, inverse(A_->generator(i)));
  }
  if (kind_ == Kind::amalgam) {
    for (std::size_t i = 0; i < B_->ngens(); ++i) {
      push_elt(GMul::Tag::b_elt, B_->generator(i));
      push_elt(GMul::Tag::b_elt, inverse(B_->generator(i)));
    }
  } else {
    GMul t;
    t.tag = GMul::Tag::stable;
    t.tsign = 1;
    t.print = "t";
    gens_.push_back(t);
    GMul ti;
    ti.tag = GMul::Tag::stable;
    ti.tsign = -1;
    ti.print = "t^-1";
    gens_.push_back(ti);
  }
  // Remark-2.x augmentation: include the edge-group generator images so
  // walls are connected (Cayley graphs of C).
  for (const auto& img : eng_a_->generator_images()) {
    push_elt(GMul::Tag::a_elt, img);
    push_elt(GMul::Tag::a_elt, inverse(img));
  }
}

GNormalForm Splitting::identity_nf() const {
  GNormalForm nf;
  if (kind_ == Kind::amalgam)
    nf.form = AmalgamNF{{}, C_->identity()};
  else
    nf.form = HnnNF{{}, A_->identity()};
  return nf;
}

bool Splitting::is_identity_nf(const GNormalForm& g) const {
  if (kind_ == Kind::amalgam) {
    const auto& nf = std::get<AmalgamNF>(g.form);
    return nf.syls.empty() && is_identity(nf.tail);
  }
  const auto& nf = std::get<HnnNF>(g.form);
  return nf.blocks.empty() && is_identity(nf.tail);
}

GNormalForm Splitting::mult_a(const GNormalForm& g, const Element& a) const {
  if (kind_ == Kind::hnn) {
    HnnNF nf = std::get<HnnNF>(g.form);
    nf.tail = multiply(nf.tail, a);
    return GNormalForm{std::move(nf)};
  }
  AmalgamNF nf = std::get<AmalgamNF>(g.form);
  Element x = multiply(eng_a_->include(nf.tail), a);
  bool merged = !nf.syls.empty() && nf.syls.back().in_a;
  if (merged) {
    x = multiply(nf.syls.back().rep, x);
    nf.syls.pop_back();
  }
  Element r = eng_a_->left_coset_rep(x);
  Element c = eng_a_->express(multiply(inverse(r), x));
  if (!is_identity(r)) nf.syls.push_back({true, std::move(r)});
  nf.tail = std::move(c);
  return GNormalForm{std::move(nf)};
}

GNormalForm Splitting::mult_b(const GNormalForm& g, const Element& b) const {
  require(kind_ == Kind::amalgam, "no B-side letters in an HNN extension");
  AmalgamNF nf = std::get<AmalgamNF>(g.form);
  Element x = multiply(eng_b_->include(nf.tail), b);
  bool merged = !nf.syls.empty() && !nf.syls.back().in_a;
  if (merged) {
    x = multiply(nf.syls.back().rep, x);
    nf.syls.pop_back();
  }
  Element r = eng_b_->left_coset_rep(x);
  Element c = eng_b_->express(multiply(inverse(r), x));
  if (!is_identity(r)) nf.syls.push_back({false, std::move(r)});
  nf.tail = std::move(c);
  return GNormalForm{std::move(nf)};
}

GNormalForm Splitting::mult_t(const GNormalForm& g, int sign) const {
  require(kind_ == Kind::hnn, "stable letter in an amalgam word");
  HnnNF nf = std::get<HnnNF>(g.form);
  const auto& c_eng = eng_a_;   // C (pinched by t^-1 . t)
  const auto& cp_eng = eng_b_;  // C' = phi(C) (pinched by t . t^-1)
  if (sign > 0) {
    if (!nf.blocks.empty() && nf.blocks.back().sign == -1 &&
        c_eng->contains(nf.tail)) {
      // t^-1 c t = phi(c)
      Element c = c_eng->express(nf.tail);
      Element rep = nf.blocks.back().rep;
      nf.blocks.pop_back();
      nf.tail = multiply(rep, cp_eng->include(c));
    } else {
      Element r = c_eng->left_coset_rep(nf.tail);
      Element c = c_eng->express(multiply(inverse(r), nf.tail));
      nf.blocks.push_back({std::move(r), +1});
      nf.tail = cp_eng->include(c);
    }
  } else {
    if (!nf.blocks.empty() && nf.blocks.back().sign == +1 &&
        cp_eng->contains(nf.tail)) {
      // t c' t^-1 = phi^-1(c')
      Element c = cp_eng->express(nf.tail);
      Element rep = nf.blocks.back().rep;
      nf.blocks.pop_back();
      nf.tail = multiply(rep, c_eng->include(c));
    } else {
      Element r = cp_eng->left_coset_rep(nf.tail);
      Element c = cp_eng->express(multiply(inverse(r), nf.tail));
      nf.blocks.push_back({std::move(r), -1});
      nf.tail = c_eng->include(c);
    }
  }
  return GNormalForm{std::move(nf)};
}

GNormalForm Splitting::mult(const GNormalForm& g, const GMul& s) const {
  switch (s.tag) {
    case GMul::Tag::a_elt: return mult_a(g, s.elt);
    case GMul::Tag::b_elt: return mult_b(g, s.elt);
    case GMul::Tag::stable: return mult_t(g, s.tsign);
  }
  throw invalid_input_error("bad multiplier");
}

std::vector<GMul> Splitting::multipliers(const GNormalForm& g) const {
  std::vector<GMul> out;
  auto push_elt = [&](GMul::Tag tag, const Element& e) {
    if (is_identity(e)) return;
    GMul m;
    m.tag = tag;
    m.elt = e;
    m.print = print_element(e);
    out.push_back(std::move(m));
  };
  if (kind_ == Kind::amalgam) {
    const auto& nf = std::get<AmalgamNF>(g.form);
    for (const auto& s : nf.syls)
      push_elt(s.in_a ? GMul::Tag::a_elt : GMul::Tag::b_elt, s.rep);
    push_elt(GMul::Tag::a_elt, eng_a_->include(nf.tail));
  } else {
    const auto& nf = std::get<HnnNF>(g.form);
    for (const auto& b : nf.blocks) {
      push_elt(GMul::Tag::a_elt, b.rep);
      GMul t;
      t.tag = GMul::Tag::stable;
      t.tsign = b.sign;
      t.print = b.sign > 0 ? "t" : "t^-1";
      out.push_back(std::move(t));
    }
    push_elt(GMul::Tag::a_elt, nf.tail);
  }
  return out;
}

GNormalForm Splitting::mult(const GNormalForm& g, const GNormalForm& h) const {
  GNormalForm out = g;
  for (const auto& m : multipliers(h)) out = mult(out, m);
  return out;
}

GNormalForm Splitting::inverse_nf(const GNormalForm& g) const {
  auto ms = multipliers(g);
  GNormalForm out = identity_nf();
  for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
    GMul m = *it;
    if (m.tag == GMul::Tag::stable)
      m.tsign = -m.tsign;
    else
      m.elt = inverse(m.elt);
    out = mult(out, m);
  }
  return out;
}

std::string Splitting::label(const GNormalForm& g) const {
  std::vector<std::string> pieces;
  if (kind_ == Kind::amalgam) {
    const auto& nf = std::get<AmalgamNF>(g.form);
    for (const auto& s : nf.syls) pieces.push_back(print_element(s.rep));
    if (!is_identity(nf.tail))
      pieces.push_back(print_element(eng_a_->include(nf.tail)));
  } else {
    const auto& nf = std::get<HnnNF>(g.form);
    for (const auto& b : nf.blocks) {
      if (!is_identity(b.rep)) pieces.push_back(print_element(b.rep));
      pieces.push_back(b.sign > 0 ? "t" : "t^-1");
    }
    if (!is_identity(nf.tail)) pieces.push_back(print_element(nf.tail));
  }
  std::string out;
  if (pieces.empty()) out = "1";
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += '*';
    out += pieces[i];
  }
  label_cache_.emplace(out, g);
  return out;
}

GNormalForm Splitting::normalize(const std::string& word) const {
  GNormalForm nf = identity_nf();
  std::string token;
  std::map<std::string, std::pair<int, std::size_t>> lookup;  // name -> (side, index)
  for (std::size_t i = 0; i < A_->ngens(); ++i)
    lookup[A_->generator_names()[i]] = {0, i};
  if (kind_ == Kind::amalgam)
    for (std::size_t i = 0; i < B_->ngens(); ++i)
      lookup[B_->generator_names()[i]] = {1, i};
  auto flush = [&]() {
    if (token.empty()) return;
    std::string name = token;
    std::int64_t exp = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      exp = std::stoll(token.substr(caret + 1));
    }
    token.clear();
    if (name == "1") return;
    if (name == "t") {
      require(kind_ == Kind::hnn, "stable letter in an amalgam word");
      for (std::int64_t k = 0; k < std::llabs(exp); ++k)
        nf = mult_t(nf, exp > 0 ? +1 : -1);
      return;
    }
    auto it = lookup.find(name);
    require(it != lookup.end(), "unknown generator: " + name);
    if (it->second.first == 0)
      nf = mult_a(nf, power(A_->generator(it->second.second), exp));
    else
      nf = mult_b(nf, power(B_->generator(it->second.second), exp));
  };
  for (char ch : word) {
    if (ch == ' ' || ch == '*' || ch == '\t')
      flush();
    else
      token.push_back(ch);
  }
  flush();
  return nf;
}

bool Splitting::in_base_wall(const GNormalForm& g) const {
  if (kind_ == Kind::amalgam)
    return std::get<AmalgamNF>(g.form).syls.empty();
  const auto& nf = std::get<HnnNF>(g.form);
  return nf.blocks.empty() && eng_a_->contains(nf.tail);
}

TreeVertex Splitting::project(const GNormalForm& g) const {
  if (kind_ == Kind::amalgam) {
    AmalgamNF nf = std::get<AmalgamNF>(g.form);
    nf.tail = C_->identity();
    if (!nf.syls.empty() && nf.syls.back().in_a) nf.syls.pop_back();
    return TreeVertex{label(GNormalForm{std::move(nf)}), 0};
  }
  HnnNF nf = std::get<HnnNF>(g.form);
  nf.tail = A_->identity();
  return TreeVertex{label(GNormalForm{std::move(nf)}), 0};
}

TreeVertex Splitting::project_b(const GNormalForm& g) const {
  if (kind_ == Kind::hnn) return project(g);
  AmalgamNF nf = std::get<AmalgamNF>(g.form);
  nf.tail = C_->identity();
  if (!nf.syls.empty() && !nf.syls.back().in_a) nf.syls.pop_back();
  return TreeVertex{label(GNormalForm{std::move(nf)}), 1};
}

TreeEdge Splitting::base_edge() const {
  TreeEdge e;
  e.coset = "1";
  e.near = TreeVertex{"1", 0};
  e.far = kind_ == Kind::amalgam ? TreeVertex{"1", 1} : TreeVertex{"t", 0};
  return e;
}

TreeVertex Splitting::translate_vertex(const GNormalForm& g,
                                       const TreeVertex& v) const {
  GNormalForm h = element_of_label(v.coset);
  GNormalForm gh = mult(g, h);
  return v.orbit == 0 ? project(gh) : project_b(gh);
}

bool Splitting::base_far_side(const TreeVertex& v) const {
  if (kind_ == Kind::amalgam) {
    if (v.coset == "1") return v.orbit == 1;
    GNormalForm g = element_of_label(v.coset);
    const auto& nf = std::get<AmalgamNF>(g.form);
    return !nf.syls.empty() && !nf.syls.front().in_a;
  }
  if (v.coset == "1") return false;
  GNormalForm g = element_of_label(v.coset);
  const auto& nf = std::get<HnnNF>(g.form);
  return !nf.blocks.empty() && nf.blocks.front().sign == +1 &&
         is_identity(nf.blocks.front().rep);
}

bool Splitting::element_far_side(const GNormalForm& g) const {
  if (kind_ == Kind::amalgam) {
    const auto& nf = std::get<AmalgamNF>(g.form);
    return !nf.syls.empty() && !nf.syls.front().in_a;
  }
  const auto& nf = std::get<HnnNF>(g.form);
  return !nf.blocks.empty() && nf.blocks.front().sign == +1 &&
         is_identity(nf.blocks.front().rep);
}

NeighborOracle Splitting::cayley_oracle() const {
  auto self = shared_from_this();
  label_cache_.emplace("1", identity_nf());
  return [self](const std::string& lab) {
    const GNormalForm& nf = self->lookup(lab);
    std::vector<std::string> out;
    for (const auto& s : self->generating_set())
      out.push_back(self->label(self->mult(nf, s)));
    return out;
  };
}

const GNormalForm& Splitting::lookup(const std::string& lab) const {
  auto it = label_cache_.find(lab);
  if (it == label_cache_.end())
    throw invalid_input_error("unknown element label: " + lab);
  return it->second;
}

GNormalForm Splitting::element_of_label(const std::string& lab) const {
  auto it = label_cache_.find(lab);
  if (it != label_cache_.end()) return it->second;
  GNormalForm nf = normalize(lab);
  label_cache_.emplace(lab, nf);
  return nf;
}

CayleyWindow Splitting::grow_window(int radius, std::size_t budget) const {
  CayleyWindow w;
  w.ball = grow_ball(cayley_oracle(), "1", radius, budget);
  w.forms.reserve(w.ball.vertex_count());
  for (VertexId v = 0; v < w.ball.vertex_count(); ++v)
    w.forms.push_back(lookup(w.ball.label(v)));
  return w;
}

}  // namespace hsp
