#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qia/core.hpp"
#include "qia/eval.hpp"
#include "qia/lattice.hpp"
#include "qia/term.hpp"

namespace qia {

/// The free orthomodular lattice on generators a, b. Each element is stored
/// as its vector of values under a fixed battery of assignments: the four
/// assignments of (a, b) in the two-element chain, then all 36 in MO2. The
/// map is injective on the free algebra, so closing {0, 1, a, b} under
/// ortho and join yields exactly its 96 elements.
class Free2 {
 public:
  static constexpr std::size_t kBooleanComponents = 4;
  static constexpr std::size_t kComponents = 4 + 36;
  static constexpr std::size_t kExpectedSize = 96;
  using Vector = std::array<Element, kComponents>;

  struct Component {
    const FiniteOml* model;
    Element a;
    Element b;
  };

  /// Deterministic: ids are assigned in discovery order.
  static Free2 build() { return Free2(); }

  std::size_t size() const { return vectors_.size(); }
  const Vector& vector(Element id) const { return vectors_.at(id); }

  std::optional<Element> find(const Vector& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element generator_a() const { return 2; }
  Element generator_b() const { return 3; }

  Element join(Element x, Element y) const { return join_[x * size() + y]; }
  Element ortho(Element x) const { return ortho_[x]; }
  Element meet(Element x, Element y) const { return ortho(join(ortho(x), ortho(y))); }
  Element implication(Implication i, Element x, Element y) const {
    return apply_implication(i, x, y, *this);
  }

  const Component& component(std::size_t k) const { return components_[k]; }

  std::string describe_component(std::size_t k) const {
    const auto& c = components_[k];
    return c.model->label() + " at a=" + c.model->name(c.a) + ", b=" + c.model->name(c.b);
  }

  /// Values of a term at every battery assignment. Only a and b may occur.
  Vector evaluate_vector(const Term& t) const {
    for (char v : variables(t)) {
      if (v != 'a' && v != 'b') {
        throw InputError(std::string("free two-generator algebra only has variables a and b, got '") + v + "'");
      }
    }
    if (has_generic(t)) throw InputError("generic implication '.' must be instantiated");
    Vector out{};
    for (std::size_t k = 0; k < kComponents; ++k) {
      Environment env;
      env.bind('a', components_[k].a);
      env.bind('b', components_[k].b);
      out[k] = qia::evaluate(t, *components_[k].model, env);
    }
    return out;
  }

  /// Id of the element a two-variable term denotes.
  Element evaluate(const Term& t) const {
    auto id = find(evaluate_vector(t));
    if (!id) throw InternalError("term value outside the free algebra: " + render_term(t));
    return *id;
  }

  std::optional<int> beran_anchor(Element id) const {
    for (const auto& [number, anchor_id] : anchors_) {
      if (anchor_id == id) return number;
    }
    return std::nullopt;
  }

  std::optional<Element> with_anchor(int number) const {
    for (const auto& [n, id] : anchors_) {
      if (n == number) return id;
    }
    return std::nullopt;
  }

  /// (Beran number, id) in ascending Beran order.
  const std::vector<std::pair<int, Element>>& anchors() const { return anchors_; }

  /// Least set containing a and b closed under (x, y) -> x ->i y; sorted ids.
  std::vector<Element> closure(Implication i) const {
    std::vector<Element> members{generator_a(), generator_b()};
    std::vector<bool> in(size(), false);
    in[generator_a()] = in[generator_b()] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      const auto current = members;
      for (auto x : current) {
        for (auto y : current) {
          auto z = implication(i, x, y);
          if (!in[z]) {
            in[z] = true;
            members.push_back(z);
            grew = true;
          }
        }
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  }

  /// Shortest term over a, b, 0, 1, v, ^, ' for the element: fewest
  /// connectives, then shortest rendering, then lexicographically first.
  const Term& element_term(Element id) const { return terms_.at(id); }

 private:
  struct Candidate {
    Term term;
    std::string text;
    bool better_than(const Candidate& other) const {
      if (text.size() != other.text.size()) return text.size() < other.text.size();
      return text < other.text;
    }
  };

  Free2() {
    boolean_ = std::make_shared<const FiniteOml>(make_boolean(1));
    mo2_ = std::make_shared<const FiniteOml>(make_mo(2));
    for (Element a = 0; a < 2; ++a) {
      for (Element b = 0; b < 2; ++b) components_.push_back({boolean_.get(), a, b});
    }
    for (Element a = 0; a < 6; ++a) {
      for (Element b = 0; b < 6; ++b) components_.push_back({mo2_.get(), a, b});
    }
    close();
    install_anchors();
    find_shortest_terms();
  }

  Vector constant_vector(bool top) const {
    Vector v{};
    for (std::size_t k = 0; k < kComponents; ++k) {
      v[k] = top ? components_[k].model->one() : components_[k].model->zero();
    }
    return v;
  }

  Vector join_vectors(const Vector& x, const Vector& y) const {
    Vector v{};
    for (std::size_t k = 0; k < kComponents; ++k) v[k] = components_[k].model->join(x[k], y[k]);
    return v;
  }

  Vector ortho_vector(const Vector& x) const {
    Vector v{};
    for (std::size_t k = 0; k < kComponents; ++k) v[k] = components_[k].model->ortho(x[k]);
    return v;
  }

  Element add(const Vector& v) {
    auto [it, inserted] = index_.emplace(v, static_cast<Element>(vectors_.size()));
    if (inserted) vectors_.push_back(v);
    return it->second;
  }

  void close() {
    Vector a{};
    Vector b{};
    for (std::size_t k = 0; k < kComponents; ++k) {
      a[k] = components_[k].a;
      b[k] = components_[k].b;
    }
    add(constant_vector(false));
    add(constant_vector(true));
    add(a);
    add(b);
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
      add(ortho_vector(vectors_[k]));
      const auto seen = vectors_.size();
      for (std::size_t j = 0; j < seen; ++j) add(join_vectors(vectors_[k], vectors_[j]));
    }
    if (vectors_.size() != kExpectedSize) {
      throw InternalError("free algebra closure has " + std::to_string(vectors_.size()) +
                          " elements, expected 96");
    }
    const auto n = vectors_.size();
    join_.resize(n * n);
    ortho_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      ortho_[x] = index_.at(ortho_vector(vectors_[x]));
      for (std::size_t y = 0; y < n; ++y) {
        join_[x * n + y] = index_.at(join_vectors(vectors_[x], vectors_[y]));
      }
    }
  }

  void install_anchors() {
    const auto a = Term::variable('a');
    const auto b = Term::variable('b');
    auto imp = [](int i, const Term& x, const Term& y) {
      return Term::implies(static_cast<Implication>(i), x, y);
    };
    const std::vector<std::pair<int, Term>> polynomials = {
        {14, imp(5, a, b)}, {22, a},           {29, imp(2, b, a)},
        {30, imp(3, a, b)}, {39, b},           {46, imp(2, a, b)},
        {62, imp(4, a, b)}, {78, imp(1, a, b)}, {92, Term::join(a, b)},
        {94, imp(0, a, b)}, {96, Term::one()}};
    std::set<Element> used;
    for (const auto& [number, term] : polynomials) {
      auto id = evaluate(term);
      if (!used.insert(id).second) {
        throw InternalError("two anchor polynomials coincide at Beran " + std::to_string(number));
      }
      anchors_.emplace_back(number, id);
    }
  }

  void find_shortest_terms() {
    std::vector<std::optional<Candidate>> best(size());
    std::vector<std::vector<Element>> by_level;
    auto offer = [&](std::map<Element, Candidate>& level, const Term& t) {
      auto id = evaluate(t);
      if (best[id]) return;
      Candidate c{t, render_term(t)};
      auto it = level.find(id);
      if (it == level.end()) level.emplace(id, std::move(c));
      else if (c.better_than(it->second)) it->second = std::move(c);
    };
    auto commit = [&](std::map<Element, Candidate>& level) {
      std::vector<Element> ids;
      for (auto& [id, c] : level) {
        best[id] = std::move(c);
        ids.push_back(id);
      }
      by_level.push_back(std::move(ids));
    };

    std::map<Element, Candidate> level0;
    for (const auto& t : {Term::variable('a'), Term::variable('b'), Term::zero(), Term::one()}) {
      offer(level0, t);
    }
    commit(level0);
    std::size_t found = by_level[0].size();
    while (found < size()) {
      const auto s = by_level.size();
      std::map<Element, Candidate> level;
      for (auto id : by_level[s - 1]) offer(level, Term::ortho(best[id]->term));
      for (std::size_t s1 = 0; s1 < s; ++s1) {
        const auto s2 = s - 1 - s1;
        for (auto x : by_level[s1]) {
          for (auto y : by_level[s2]) {
            offer(level, Term::join(best[x]->term, best[y]->term));
            offer(level, Term::meet(best[x]->term, best[y]->term));
          }
        }
      }
      if (level.empty() && s > 16) throw InternalError("shortest-term search stalled");
      found += level.size();
      commit(level);
    }
    for (auto& c : best) terms_.push_back(c->term);
  }

  // Shared so that copies keep the component pointers valid.
  std::shared_ptr<const FiniteOml> boolean_;
  std::shared_ptr<const FiniteOml> mo2_;
  std::vector<Component> components_;
  std::vector<Vector> vectors_;
  std::map<Vector, Element> index_;
  std::vector<Element> join_;
  std::vector<Element> ortho_;
  std::vector<std::pair<int, Element>> anchors_;
  std::vector<Term> terms_;
};

/// Shared instance, built on first use.
inline const Free2& free2() {
  static const Free2 instance = Free2::build();
  return instance;
}

/// One row per element: canonical id, Beran anchor or `-`, shortest term.
inline std::string render_element_table(const Free2& f, const std::vector<Element>& ids) {
  std::ostringstream out;
  out << "id  beran  term\n";
  for (auto id : ids) {
    auto anchor = f.beran_anchor(id);
    std::string number = anchor ? std::to_string(*anchor) : "-";
    out << std::to_string(id) << std::string(4 - std::min<std::size_t>(3, std::to_string(id).size()), ' ')
        << number << std::string(7 - std::min<std::size_t>(6, number.size()), ' ')
        << render_term(f.element_term(id)) << '\n';
  }
  return out.str();
}

}  // namespace qia
