#include "polydyn/hom.hpp"

#include <cmath>
#include <set>

#include "polydyn/algebra.hpp"
#include "polydyn/error.hpp"

namespace polydyn {

namespace {

BigInt big_pow(std::size_t base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

// Every (target position, backward function) choice for one domain position.
struct Choice {
  std::size_t target;
  std::vector<std::size_t> back;
};

std::vector<Choice> choices_at(const FinPoly& p, std::size_t i, const FinPoly& q) {
  std::vector<Choice> out;
  for (std::size_t j = 0; j < q.size(); ++j) {
    for_each_function(q.dirs(j).size(), p.dirs(i).size(), [&](const std::vector<std::size_t>& f) {
      out.push_back({j, f});
      return true;
    });
  }
  return out;
}

}  // namespace

BigInt hom_count(const FinPoly& p, const FinPoly& q) {
  BigInt total = 1;
  for (const auto& pos : p) {
    BigInt s = 0;
    for (const auto& qpos : q) s += big_pow(pos.dirs.size(), qpos.dirs.size());
    total *= s;
  }
  return total;
}

void for_each_lens(const FinPoly& p, const FinPoly& q, const std::function<bool(const Lens&)>& fn) {
  std::vector<std::vector<Choice>> choices;
  choices.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    choices.push_back(choices_at(p, i, q));
    if (choices.back().empty()) return;
  }
  std::vector<std::size_t> idx(p.size(), 0);
  std::vector<std::size_t> op(p.size());
  std::vector<std::vector<std::size_t>> od(p.size());
  while (true) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      op[i] = choices[i][idx[i]].target;
      od[i] = choices[i][idx[i]].back;
    }
    if (!fn(Lens(p, q, op, od))) return;
    std::size_t k = p.size();
    while (true) {
      if (k == 0) return;
      --k;
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
    }
  }
}

std::vector<Lens> hom_enumerate(const FinPoly& p, const FinPoly& q, std::size_t limit) {
  if (hom_count(p, q) > limit)
    throw SizeError("hom-set has " + hom_count(p, q).str() + " elements, above the limit " + std::to_string(limit));
  std::vector<Lens> out;
  for_each_lens(p, q, [&](const Lens& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::optional<Lens> random_lens(const FinPoly& p, const FinPoly& q, std::mt19937_64& rng) {
  std::vector<std::size_t> op(p.size());
  std::vector<std::vector<std::size_t>> od(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t n = p.dirs(i).size();
    // weight each target by the number of backward functions it admits
    std::vector<double> weights;
    for (const auto& qpos : q) weights.push_back(std::pow(double(n), double(qpos.dirs.size())));
    double total = 0;
    for (double w : weights) total += w;
    if (total == 0) return std::nullopt;
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::size_t j = pick(rng);
    op[i] = j;
    od[i].resize(q.dirs(j).size());
    for (auto& v : od[i]) v = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  return Lens(p, q, std::move(op), std::move(od));
}

bool right_cancellable(const Lens& f, const std::vector<FinPoly>& tests) {
  for (const auto& t : tests) {
    std::set<std::vector<std::size_t>> seen;  // composites already met
    bool ok = true;
    for_each_lens(f.cod(), t, [&](const Lens& g) {
      Lens c = lens_compose(g, f);
      std::vector<std::size_t> key = c.on_pos();
      for (const auto& row : c.on_dir_table()) {
        key.push_back(SIZE_MAX);
        key.insert(key.end(), row.begin(), row.end());
      }
      ok = seen.insert(std::move(key)).second;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

bool left_cancellable(const Lens& f, const std::vector<FinPoly>& tests) {
  for (const auto& t : tests) {
    std::set<std::vector<std::size_t>> seen;
    bool ok = true;
    for_each_lens(t, f.dom(), [&](const Lens& g) {
      Lens c = lens_compose(f, g);
      std::vector<std::size_t> key = c.on_pos();
      for (const auto& row : c.on_dir_table()) {
        key.push_back(SIZE_MAX);
        key.insert(key.end(), row.begin(), row.end());
      }
      ok = seen.insert(std::move(key)).second;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

bool is_epi_by_cancellation(const Lens& f) {
  FinSet two = FinSet::range(2);
  return right_cancellable(f, {y(), sum(y(), one()), linear(two), constant(two)});
}

bool is_mono(const Lens& f) {
  std::size_t m = 0;
  for (const auto& pos : f.dom()) m = std::max(m, pos.dirs.size());
  std::vector<FinPoly> tests;
  for (std::size_t n = 0; n <= 2 * m; ++n) tests.push_back(representable(FinSet::range(n)));
  return left_cancellable(f, tests);
}

}  // namespace polydyn
