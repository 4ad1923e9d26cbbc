#include "hsp/group/subgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hsp/errors.hpp"
#include "hsp/group/stallings.hpp"

namespace hsp {

SubgroupEngine::SubgroupEngine(GroupPtr ambient, GroupPtr abstract,
                               std::vector<Element> images)
    : ambient_(std::move(ambient)),
      abstract_(std::move(abstract)),
      images_(std::move(images)) {
  if (images_.size() != abstract_->ngens())
    throw invalid_input_error(
        "engine: generator image count must match the declared edge group");
  for (const auto& img : images_)
    if (img.group != ambient_.get())
      throw invalid_input_error("engine: image lies in the wrong group");
}

Element SubgroupEngine::left_coset_rep(const Element& g) const {
  return inverse(right_coset_rep(inverse(g)));
}

Element SubgroupEngine::express(const Element& g) const {
  auto w = express_word(g);
  if (!w)
    throw invalid_input_error("express: element is not in the subgroup");
  return from_word(*abstract_, *w);
}

Element SubgroupEngine::include(const Element& c) const {
  if (c.group != abstract_.get())
    throw invalid_input_error("include: element not in the edge group");
  if (images_.empty()) return ambient_->identity();
  return apply_hom(c, images_);
}

bool SubgroupEngine::is_whole_group() const {
  for (std::size_t i = 0; i < ambient_->ngens(); ++i)
    if (!contains(ambient_->generator(i))) return false;
  return true;
}

bool SubgroupEngine::is_trivial_subgroup() const {
  return std::all_of(images_.begin(), images_.end(),
                     [](const Element& e) { return is_identity(e); });
}

namespace {

// ---------------------------------------------------------------- trivial

class TrivialEngine final : public SubgroupEngine {
 public:
  TrivialEngine(GroupPtr ambient, GroupPtr abstract,
                std::vector<Element> images)
      : SubgroupEngine(std::move(ambient), std::move(abstract),
                       std::move(images)) {}

  bool contains(const Element& g) const override { return is_identity(g); }
  std::optional<Word> express_word(const Element& g) const override {
    if (!is_identity(g)) return std::nullopt;
    return Word{};
  }
  Element right_coset_rep(const Element& g) const override { return g; }
  std::string kind_name() const override { return "trivial"; }
};

// ---------------------------------------------------------------- lattice

// Integer row Hermite form with transformation tracking: rows_ is the
// reduced basis, trans_[i] expresses rows_[i] over the original generators.
class LatticeEngine final : public SubgroupEngine {
 public:
  LatticeEngine(GroupPtr ambient, GroupPtr abstract,
                std::vector<Element> images)
      : SubgroupEngine(std::move(ambient), std::move(abstract),
                       std::move(images)) {
    if (ambient_->kind() != MarkedGroup::Kind::free_abelian)
      throw invalid_input_error("lattice engine needs a free-abelian group");
    const std::size_t n = ambient_->ngens();
    const std::size_t me = images_.size();
    std::vector<std::vector<std::int64_t>> rows(me);
    std::vector<std::vector<std::int64_t>> trans(me);
    for (std::size_t i = 0; i < me; ++i) {
      rows[i] = images_[i].vec;
      trans[i].assign(me, 0);
      trans[i][i] = 1;
    }
    // column-by-column elimination with gcd cascades
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < me; ++col) {
      while (true) {
        std::size_t best = me;
        for (std::size_t i = r; i < me; ++i)
          if (rows[i][col] != 0 &&
              (best == me ||
               std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
            best = i;
        if (best == me) break;
        std::swap(rows[r], rows[best]);
        std::swap(trans[r], trans[best]);
        bool reduced_all = true;
        for (std::size_t i = r + 1; i < me; ++i) {
          if (rows[i][col] == 0) continue;
          std::int64_t q = rows[i][col] / rows[r][col];
          for (std::size_t k = 0; k < n; ++k) rows[i][k] -= q * rows[r][k];
          for (std::size_t k = 0; k < me; ++k) trans[i][k] -= q * trans[r][k];
          if (rows[i][col] != 0) reduced_all = false;
        }
        if (reduced_all) break;
      }
      if (r < me && rows[r][col] != 0) {
        if (rows[r][col] < 0) {
          for (auto& x : rows[r]) x = -x;
          for (auto& x : trans[r]) x = -x;
        }
        pivot_col_.push_back(col);
        ++r;
      }
    }
    rows.resize(r);
    trans.resize(r);
    // reduce entries above each pivot into [0, pivot)
    for (std::size_t i = r; i-- > 0;) {
      for (std::size_t j = 0; j < i; ++j) {
        std::int64_t p = rows[i][pivot_col_[i]];
        std::int64_t q = floor_div(rows[j][pivot_col_[i]], p);
        if (q == 0) continue;
        for (std::size_t k = 0; k < n; ++k) rows[j][k] -= q * rows[i][k];
        for (std::size_t k = 0; k < me; ++k) trans[j][k] -= q * trans[i][k];
      }
    }
    rows_ = std::move(rows);
    trans_ = std::move(trans);

    if (rows_.size() != me)
      throw invalid_input_error(
          "lattice generators are dependent: rank " +
          std::to_string(rows_.size()) + " but " + std::to_string(me) +
          " generators declared");
    if (me >= 2 && abstract_->kind() != MarkedGroup::Kind::free_abelian)
      throw invalid_input_error(
          "lattice subgroups of rank >= 2 must be declared free-abelian");
  }

  bool contains(const Element& g) const override {
    auto [residue, coeffs] = reduce(g.vec);
    (void)coeffs;
    return std::all_of(residue.begin(), residue.end(),
                       [](std::int64_t x) { return x == 0; });
  }

  std::optional<Word> express_word(const Element& g) const override {
    auto [residue, coeffs] = reduce(g.vec);
    for (std::int64_t x : residue)
      if (x != 0) return std::nullopt;
    // map basis-row coefficients back through the transformation
    std::vector<std::int64_t> orig(images_.size(), 0);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t k = 0; k < images_.size(); ++k)
        orig[k] += coeffs[i] * trans_[i][k];
    Word w;
    for (std::size_t k = 0; k < orig.size(); ++k) {
      std::int64_t c = orig[k];
      for (std::int64_t j = 0; j < std::llabs(c); ++j)
        w.push_back(c > 0 ? Letter(k + 1) : -Letter(k + 1));
    }
    return w;
  }

  Element right_coset_rep(const Element& g) const override {
    auto [residue, coeffs] = reduce(g.vec);
    (void)coeffs;
    Element e = ambient_->identity();
    e.vec = residue;
    return e;
  }

  std::string kind_name() const override { return "hermite-lattice"; }

 private:
  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> reduce(
      std::vector<std::int64_t> v) const {
    std::vector<std::int64_t> coeffs(rows_.size(), 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::int64_t p = rows_[i][pivot_col_[i]];
      std::int64_t q = floor_div(v[pivot_col_[i]], p);
      coeffs[i] = q;
      if (q != 0)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= q * rows_[i][k];
    }
    return {std::move(v), std::move(coeffs)};
  }

  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::vector<std::int64_t>> trans_;
  std::vector<std::size_t> pivot_col_;
};

// ---------------------------------------------------------------- products

// Direct or free products of per-factor engines.  For a free product the
// subgroup is the free product of the per-factor subgroups; membership and
// expressions go syllable by syllable, coset representatives by stripping
// subgroup parts off the leading syllable.
class ProductEngine final : public SubgroupEngine {
 public:
  ProductEngine(GroupPtr ambient, GroupPtr abstract,
                std::vector<Element> images, std::vector<EnginePtr> subs,
                std::vector<std::vector<std::size_t>> gen_map)
      : SubgroupEngine(std::move(ambient), std::move(abstract),
                       std::move(images)),
        subs_(std::move(subs)),
        gen_map_(std::move(gen_map)) {}

  bool contains(const Element& g) const override {
    if (ambient_->kind() == MarkedGroup::Kind::direct_product) {
      for (std::size_t f = 0; f < g.comps.size(); ++f)
        if (!subs_[f]->contains(g.comps[f])) return false;
      return true;
    }
    for (const auto& [f, part] : g.syls)
      if (!subs_[f]->contains(part)) return false;
    return true;
  }

  std::optional<Word> express_word(const Element& g) const override {
    Word out;
    auto emit = [&](std::size_t f, const Element& part) {
      auto sub = subs_[f]->express_word(part);
      if (!sub) return false;
      for (Letter x : *sub) {
        std::size_t local = std::size_t(std::abs(x)) - 1;
        Letter top = Letter(gen_map_[f][local] + 1);
        out.push_back(x > 0 ? top : -top);
      }
      return true;
    };
    if (ambient_->kind() == MarkedGroup::Kind::direct_product) {
      for (std::size_t f = 0; f < g.comps.size(); ++f)
        if (!emit(f, g.comps[f])) return std::nullopt;
      return out;
    }
    for (const auto& [f, part] : g.syls)
      if (!emit(f, part)) return std::nullopt;
    return out;
  }

  Element right_coset_rep(const Element& g) const override {
    if (ambient_->kind() == MarkedGroup::Kind::direct_product) {
      Element e = ambient_->identity();
      for (std::size_t f = 0; f < g.comps.size(); ++f)
        e.comps[f] = subs_[f]->right_coset_rep(g.comps[f]);
      return e;
    }
    // strip subgroup parts from the front: C*(p*rest) = C*(rep_f(p)*rest)
    Element e = g;
    std::size_t start = 0;
    while (start < e.syls.size()) {
      auto& [f, part] = e.syls[start];
      Element rep = subs_[f]->right_coset_rep(part);
      if (is_identity(rep)) {
        ++start;
        continue;
      }
      if (rep == part) break;
      part = rep;
      break;
    }
    Element out = ambient_->identity();
    out.syls.assign(e.syls.begin() + std::ptrdiff_t(start), e.syls.end());
    return out;
  }

  std::string kind_name() const override {
    return ambient_->kind() == MarkedGroup::Kind::direct_product
               ? "engine-product"
               : "free-product-of-engines";
  }

 private:
  std::vector<EnginePtr> subs_;
  std::vector<std::vector<std::size_t>> gen_map_;  // per factor: local -> top
};

GroupPtr trivial_abstract() {
  static GroupPtr t = MarkedGroup::make_trivial("1");
  return t;
}

}  // namespace

EnginePtr make_subgroup_engine(GroupPtr ambient, GroupPtr abstract,
                               std::vector<Element> images) {
  if (!abstract) abstract = trivial_abstract();
  for (const auto& img : images)
    if (img.group != ambient.get())
      throw invalid_input_error("engine factory: image in wrong group");

  bool all_trivial = std::all_of(images.begin(), images.end(),
                                 [](const Element& e) { return is_identity(e); });
  if (all_trivial) {
    if (abstract->ngens() > 0)
      throw invalid_input_error(
          "declared edge group has generators but all images are trivial");
    return std::make_shared<TrivialEngine>(ambient, abstract,
                                           std::move(images));
  }

  switch (ambient->kind()) {
    case MarkedGroup::Kind::trivial:
      return std::make_shared<TrivialEngine>(ambient, abstract,
                                             std::move(images));
    case MarkedGroup::Kind::free:
      return std::make_shared<StallingsEngine>(ambient, abstract,
                                               std::move(images));
    case MarkedGroup::Kind::free_abelian:
      return std::make_shared<LatticeEngine>(ambient, abstract,
                                             std::move(images));
    case MarkedGroup::Kind::direct_product:
    case MarkedGroup::Kind::free_product: {
      const bool direct = ambient->kind() == MarkedGroup::Kind::direct_product;
      const std::size_t nf = ambient->factors().size();
      // group generator images by the factor they are concentrated in
      std::vector<std::vector<Element>> parts(nf);
      std::vector<std::vector<std::size_t>> owners(nf);
      for (std::size_t i = 0; i < images.size(); ++i) {
        const Element& img = images[i];
        std::size_t home = nf;
        Element local;
        if (direct) {
          for (std::size_t f = 0; f < nf; ++f) {
            if (is_identity(img.comps[f])) continue;
            if (home != nf)
              throw capability_error(
                  "generator image spans several direct factors; only "
                  "componentwise subgroups are supported");
            home = f;
            local = img.comps[f];
          }
        } else {
          if (img.syls.size() != 1)
            throw capability_error(
                "generator image mixes free-product factors; such edge "
                "groups are outside the supported engine classes");
          home = img.syls[0].first;
          local = img.syls[0].second;
        }
        parts[home].push_back(local);
        owners[home].push_back(i);
      }
      std::vector<std::size_t> active;
      for (std::size_t f = 0; f < nf; ++f)
        if (!parts[f].empty()) active.push_back(f);

      // the declared edge group must decompose parallel to the grouping
      std::vector<GroupPtr> sub_abstracts(nf);
      if (active.size() == 1) {
        sub_abstracts[active[0]] = abstract;
      } else {
        bool shape_ok =
            (direct ? abstract->kind() == MarkedGroup::Kind::direct_product
                    : abstract->kind() == MarkedGroup::Kind::free_product) &&
            abstract->factors().size() == active.size();
        if (shape_ok) {
          std::size_t gi = 0;
          for (std::size_t a = 0; a < active.size() && shape_ok; ++a) {
            std::size_t f = active[a];
            if (abstract->factors()[a]->ngens() != parts[f].size())
              shape_ok = false;
            for (std::size_t k = 0; k < parts[f].size() && shape_ok; ++k)
              if (owners[f][k] != gi + k) shape_ok = false;
            gi += parts[f].size();
          }
        }
        if (!shape_ok)
          throw invalid_input_error(
              "declared edge group must be a product matching the "
              "factor-by-factor grouping of its generator images");
        for (std::size_t a = 0; a < active.size(); ++a)
          sub_abstracts[active[a]] = abstract->factors()[a];
      }

      std::vector<EnginePtr> subs(nf);
      std::vector<std::vector<std::size_t>> gen_map(nf);
      for (std::size_t f = 0; f < nf; ++f) {
        GroupPtr sub_abs = parts[f].empty() ? trivial_abstract()
                                            : sub_abstracts[f];
        subs[f] = make_subgroup_engine(ambient->factors()[f], sub_abs,
                                       parts[f]);
        gen_map[f] = owners[f];
      }
      return std::make_shared<ProductEngine>(ambient, abstract,
                                             std::move(images),
                                             std::move(subs),
                                             std::move(gen_map));
    }
  }
  throw invalid_input_error("unreachable engine kind");
}

}  // namespace hsp
