#include "polydyn/algebra.hpp"

#include "polydyn/error.hpp"
#include "polydyn/label.hpp"

namespace polydyn {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap)
    throw SizeError(std::string(what) + " would have " + std::to_string(n) + " positions (cap " +
                    std::to_string(cap) + ")");
}

std::size_t mul_capped(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > cap / a) return cap + 1;
  return a * b;
}

// Odometer over a mixed radix, last digit fastest.
bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix) {
  std::size_t k = idx.size();
  while (k > 0) {
    --k;
    if (++idx[k] < radix[k]) return true;
    idx[k] = 0;
  }
  return false;
}

std::string star() { return "*"; }

}  // namespace

FinPoly sum(const FinPoly& p, const FinPoly& q) { return sum_all({p, q}); }
FinPoly product(const FinPoly& p, const FinPoly& q) { return product_all({p, q}); }
FinPoly tensor(const FinPoly& p, const FinPoly& q) { return tensor_all({p, q}); }

FinPoly sum_all(const std::vector<FinPoly>& ps) {
  std::vector<Position> out;
  for (std::size_t k = 0; k < ps.size(); ++k)
    for (const auto& pos : ps[k]) out.push_back({inj_label(k, pos.label), pos.dirs});
  return FinPoly(std::move(out));
}

FinPoly product_all(const std::vector<FinPoly>& ps, std::size_t cap) {
  std::size_t total = 1;
  std::vector<std::size_t> radix;
  for (const auto& p : ps) {
    total = mul_capped(total, p.size(), cap);
    radix.push_back(p.size());
  }
  check_cap(total, cap, "product");
  std::vector<Position> out;
  if (total == 0) return FinPoly();
  out.reserve(total);
  std::vector<std::size_t> idx(ps.size(), 0);
  std::vector<std::string> parts(ps.size());
  do {
    std::vector<std::string> dirs;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      parts[k] = ps[k].label(idx[k]);
      for (const auto& d : ps[k].dirs(idx[k])) dirs.push_back(inj_label(k, d));
    }
    out.push_back({tuple_label(parts), FinSet(std::move(dirs))});
  } while (advance(idx, radix));
  return FinPoly(std::move(out));
}

FinPoly tensor_all(const std::vector<FinPoly>& ps, std::size_t cap) {
  std::size_t total = 1;
  std::vector<std::size_t> radix;
  for (const auto& p : ps) {
    total = mul_capped(total, p.size(), cap);
    radix.push_back(p.size());
  }
  check_cap(total, cap, "tensor");
  std::vector<Position> out;
  if (total == 0) return FinPoly();
  out.reserve(total);
  std::vector<std::size_t> idx(ps.size(), 0);
  std::vector<std::string> parts(ps.size());
  std::vector<FinSet> dir_sets(ps.size());
  do {
    for (std::size_t k = 0; k < ps.size(); ++k) {
      parts[k] = ps[k].label(idx[k]);
      dir_sets[k] = ps[k].dirs(idx[k]);
    }
    out.push_back({tuple_label(parts), set_product(dir_sets)});
  } while (advance(idx, radix));
  return FinPoly(std::move(out));
}

FinPoly compose(const FinPoly& p, const FinPoly& q, std::size_t cap) {
  std::size_t total = 0;
  for (const auto& pos : p) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < pos.dirs.size(); ++k) n = mul_capped(n, q.size(), cap);
    total += n;
    check_cap(total, cap, "composite");
  }
  std::vector<Position> out;
  out.reserve(total);
  Entries entries;
  for (const auto& pos : p) {
    const FinSet& d = pos.dirs;
    entries.resize(d.size());
    for_each_function(d.size(), q.size(), [&](const std::vector<std::size_t>& phi) {
      std::vector<std::string> dirs;
      for (std::size_t k = 0; k < d.size(); ++k) {
        entries[k] = {d[k], q.label(phi[k])};
        for (const auto& e : q.dirs(phi[k])) dirs.push_back(tuple_label({d[k], e}));
      }
      out.push_back({tuple_label({pos.label, map_label(entries)}), FinSet(std::move(dirs))});
      return true;
    });
  }
  return FinPoly(std::move(out));
}

FinPoly compose_power(const FinPoly& p, std::size_t n, std::size_t cap) {
  if (n == 0) return y();
  FinPoly acc = p;
  for (std::size_t k = 1; k < n; ++k) acc = compose(p, acc, cap);
  return acc;
}

FinPoly cartesian_closure(const FinPoly& q, const FinPoly& p, std::size_t cap) {
  std::vector<FinPoly> factors;
  for (const auto& pos : p) factors.push_back(compose(q, sum(constant(pos.dirs), y()), cap));
  return product_all(factors, cap);
}

FinPoly dirichlet_closure(const FinPoly& p, const FinPoly& q, std::size_t cap) {
  std::vector<FinPoly> factors;
  for (const auto& pos : p) factors.push_back(compose(q, linear(pos.dirs), cap));
  return product_all(factors, cap);
}

// ---------------------------------------------------------------------------
// Functoriality

Lens sum_lens(const Lens& f, const Lens& g) {
  const Lens* parts[2] = {&f, &g};
  FinPoly dom = sum(f.dom(), g.dom());
  return Lens::from_rules(
      dom, sum(f.cod(), g.cod()),
      [&](std::size_t i) {
        Label l = parse_label(dom.label(i));
        return inj_label(l.tag, parts[l.tag]->pos_image(l.payload().render()));
      },
      [&](std::size_t i, const std::string& e) {
        Label l = parse_label(dom.label(i));
        return parts[l.tag]->dir_back(l.payload().render(), e);
      });
}

Lens product_lens(const Lens& f, const Lens& g) {
  FinPoly dom = product(f.dom(), g.dom());
  return Lens::from_rules(
      dom, product(f.cod(), g.cod()),
      [&](std::size_t i) {
        Label l = parse_label(dom.label(i));
        return tuple_label({f.pos_image(l[0].render()), g.pos_image(l[1].render())});
      },
      [&](std::size_t i, const std::string& e) {
        Label l = parse_label(dom.label(i));
        Label el = parse_label(e);
        const Lens& part = el.tag == 0 ? f : g;
        return inj_label(el.tag, part.dir_back(l[el.tag].render(), el.payload().render()));
      });
}

Lens tensor_lens(const Lens& f, const Lens& g) { return tensor_all_lens({f, g}); }

Lens tensor_all_lens(const std::vector<Lens>& fs) {
  std::vector<FinPoly> doms, cods;
  for (const auto& f : fs) {
    doms.push_back(f.dom());
    cods.push_back(f.cod());
  }
  FinPoly dom = tensor_all(doms);
  return Lens::from_rules(
      dom, tensor_all(cods),
      [&](std::size_t i) {
        Label l = parse_label(dom.label(i));
        std::vector<std::string> parts;
        for (std::size_t k = 0; k < fs.size(); ++k) parts.push_back(fs[k].pos_image(l[k].render()));
        return tuple_label(parts);
      },
      [&](std::size_t i, const std::string& e) {
        Label l = parse_label(dom.label(i));
        Label el = parse_label(e);
        std::vector<std::string> parts;
        for (std::size_t k = 0; k < fs.size(); ++k)
          parts.push_back(fs[k].dir_back(l[k].render(), el[k].render()));
        return tuple_label(parts);
      });
}

Lens compose_lens(const Lens& f, const Lens& g) {
  FinPoly dom = compose(f.dom(), g.dom());
  return Lens::from_rules(
      dom, compose(f.cod(), g.cod()),
      [&](std::size_t k) {
        Label l = parse_label(dom.label(k));
        std::string i = l[0].render();
        const std::string& i2 = f.pos_image(i);
        Entries entries;
        for (const auto& d2 : f.cod().dirs(f.cod().index_of(i2))) {
          std::string j = l[1].at(f.dir_back(i, d2)).render();
          entries.emplace_back(d2, g.pos_image(j));
        }
        return tuple_label({i2, map_label(entries)});
      },
      [&](std::size_t k, const std::string& e) {
        Label l = parse_label(dom.label(k));
        Label el = parse_label(e);
        std::string i = l[0].render();
        std::string d = f.dir_back(i, el[0].render());
        std::string j = l[1].at(d).render();
        return tuple_label({d, g.dir_back(j, el[1].render())});
      });
}

Lens copair(const Lens& f, const Lens& g) {
  if (!(f.cod() == g.cod())) throw ShapeError("copairing needs a common codomain");
  const Lens* parts[2] = {&f, &g};
  FinPoly dom = sum(f.dom(), g.dom());
  return Lens::from_rules(
      dom, f.cod(),
      [&](std::size_t i) {
        Label l = parse_label(dom.label(i));
        return parts[l.tag]->pos_image(l.payload().render());
      },
      [&](std::size_t i, const std::string& e) {
        Label l = parse_label(dom.label(i));
        return parts[l.tag]->dir_back(l.payload().render(), e);
      });
}

Lens pairing(const Lens& f, const Lens& g) {
  if (!(f.dom() == g.dom())) throw ShapeError("pairing needs a common domain");
  const FinPoly& dom = f.dom();
  return Lens::from_rules(
      dom, product(f.cod(), g.cod()),
      [&](std::size_t i) { return tuple_label({f.pos_image(dom.label(i)), g.pos_image(dom.label(i))}); },
      [&](std::size_t i, const std::string& e) {
        Label el = parse_label(e);
        const Lens& part = el.tag == 0 ? f : g;
        return part.dir_back(dom.label(i), el.payload().render());
      });
}

Lens proj_left(const FinPoly& p, const FinPoly& q) {
  FinPoly dom = product(p, q);
  return Lens::from_rules(
      dom, p, [&](std::size_t i) { return parse_label(dom.label(i))[0].render(); },
      [](std::size_t, const std::string& d) { return inj_label(0, d); });
}

Lens proj_right(const FinPoly& p, const FinPoly& q) {
  FinPoly dom = product(p, q);
  return Lens::from_rules(
      dom, q, [&](std::size_t i) { return parse_label(dom.label(i))[1].render(); },
      [](std::size_t, const std::string& d) { return inj_label(1, d); });
}

Lens inj_left(const FinPoly& p, const FinPoly& q) {
  return Lens::from_rules(
      p, sum(p, q), [&](std::size_t i) { return inj_label(0, p.label(i)); },
      [](std::size_t, const std::string& d) { return d; });
}

Lens inj_right(const FinPoly& p, const FinPoly& q) {
  return Lens::from_rules(
      q, sum(p, q), [&](std::size_t i) { return inj_label(1, q.label(i)); },
      [](std::size_t, const std::string& d) { return d; });
}

Lens to_terminal(const FinPoly& p) {
  return Lens(p, one(), std::vector<std::size_t>(p.size(), 0), std::vector<std::vector<std::size_t>>(p.size()));
}

Lens from_initial(const FinPoly& p) { return Lens(zero(), p, {}, {}); }

// ---------------------------------------------------------------------------
// Coherence isomorphisms

namespace {

Lens rule_lens(const FinPoly& dom, const FinPoly& cod, const std::function<std::string(const Label&)>& pos,
               const std::function<std::string(const Label&, const Label&)>& dir) {
  return Lens::from_rules(
      dom, cod, [&](std::size_t i) { return pos(parse_label(dom.label(i))); },
      [&](std::size_t i, const std::string& e) { return dir(parse_label(dom.label(i)), parse_label(e)); });
}

std::string same_dir(const Label&, const Label& e) { return e.render(); }

}  // namespace

Iso sum_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r) {
  FinPoly left = sum(sum(p, q), r);
  FinPoly right = sum(p, sum(q, r));
  Lens fwd = rule_lens(
      left, right,
      [](const Label& l) {
        if (l.tag == 1) return inj_label(1, inj_label(1, l.payload().render()));
        const Label& in = l.payload();
        if (in.tag == 0) return inj_label(0, in.payload().render());
        return inj_label(1, inj_label(0, in.payload().render()));
      },
      same_dir);
  Lens bwd = rule_lens(
      right, left,
      [](const Label& l) {
        if (l.tag == 0) return inj_label(0, inj_label(0, l.payload().render()));
        const Label& in = l.payload();
        if (in.tag == 0) return inj_label(0, inj_label(1, in.payload().render()));
        return inj_label(1, in.payload().render());
      },
      same_dir);
  return {fwd, bwd};
}

Iso sum_left_unit(const FinPoly& p) {
  FinPoly left = sum(zero(), p);
  Lens fwd = rule_lens(left, p, [](const Label& l) { return l.payload().render(); }, same_dir);
  Lens bwd = rule_lens(p, left, [](const Label& l) { return inj_label(1, l.render()); }, same_dir);
  return {fwd, bwd};
}

Iso sum_right_unit(const FinPoly& p) {
  FinPoly left = sum(p, zero());
  Lens fwd = rule_lens(left, p, [](const Label& l) { return l.payload().render(); }, same_dir);
  Lens bwd = rule_lens(p, left, [](const Label& l) { return inj_label(0, l.render()); }, same_dir);
  return {fwd, bwd};
}

Iso sum_symmetry(const FinPoly& p, const FinPoly& q) {
  auto swap = [](const Label& l) { return inj_label(1 - l.tag, l.payload().render()); };
  return {rule_lens(sum(p, q), sum(q, p), swap, same_dir), rule_lens(sum(q, p), sum(p, q), swap, same_dir)};
}

Iso product_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r) {
  FinPoly left = product(product(p, q), r);
  FinPoly right = product(p, product(q, r));
  Lens fwd = rule_lens(
      left, right,
      [](const Label& l) { return tuple_label({l[0][0].render(), tuple_label({l[0][1].render(), l[1].render()})}); },
      [](const Label&, const Label& e) {
        if (e.tag == 0) return inj_label(0, inj_label(0, e.payload().render()));
        const Label& in = e.payload();
        if (in.tag == 0) return inj_label(0, inj_label(1, in.payload().render()));
        return inj_label(1, in.payload().render());
      });
  Lens bwd = rule_lens(
      right, left,
      [](const Label& l) { return tuple_label({tuple_label({l[0].render(), l[1][0].render()}), l[1][1].render()}); },
      [](const Label&, const Label& e) {
        if (e.tag == 1) return inj_label(1, inj_label(1, e.payload().render()));
        const Label& in = e.payload();
        if (in.tag == 0) return inj_label(0, in.payload().render());
        return inj_label(1, inj_label(0, in.payload().render()));
      });
  return {fwd, bwd};
}

Iso product_left_unit(const FinPoly& p) {
  FinPoly left = product(one(), p);
  Lens fwd = rule_lens(
      left, p, [](const Label& l) { return l[1].render(); },
      [](const Label&, const Label& e) { return inj_label(1, e.render()); });
  Lens bwd = rule_lens(
      p, left, [](const Label& l) { return tuple_label({star(), l.render()}); },
      [](const Label&, const Label& e) { return e.payload().render(); });
  return {fwd, bwd};
}

Iso product_right_unit(const FinPoly& p) {
  FinPoly left = product(p, one());
  Lens fwd = rule_lens(
      left, p, [](const Label& l) { return l[0].render(); },
      [](const Label&, const Label& e) { return inj_label(0, e.render()); });
  Lens bwd = rule_lens(
      p, left, [](const Label& l) { return tuple_label({l.render(), star()}); },
      [](const Label&, const Label& e) { return e.payload().render(); });
  return {fwd, bwd};
}

Iso product_symmetry(const FinPoly& p, const FinPoly& q) {
  auto pos = [](const Label& l) { return tuple_label({l[1].render(), l[0].render()}); };
  auto dir = [](const Label&, const Label& e) { return inj_label(1 - e.tag, e.payload().render()); };
  return {rule_lens(product(p, q), product(q, p), pos, dir), rule_lens(product(q, p), product(p, q), pos, dir)};
}

Iso tensor_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r) {
  FinPoly left = tensor(tensor(p, q), r);
  FinPoly right = tensor(p, tensor(q, r));
  auto to_right = [](const Label& l) {
    return tuple_label({l[0][0].render(), tuple_label({l[0][1].render(), l[1].render()})});
  };
  auto to_left = [](const Label& l) {
    return tuple_label({tuple_label({l[0].render(), l[1][0].render()}), l[1][1].render()});
  };
  Lens fwd = rule_lens(left, right, to_right, [&](const Label&, const Label& e) { return to_left(e); });
  Lens bwd = rule_lens(right, left, to_left, [&](const Label&, const Label& e) { return to_right(e); });
  return {fwd, bwd};
}

Iso tensor_left_unit(const FinPoly& p) {
  FinPoly left = tensor(y(), p);
  Lens fwd = rule_lens(
      left, p, [](const Label& l) { return l[1].render(); },
      [](const Label&, const Label& e) { return tuple_label({star(), e.render()}); });
  Lens bwd = rule_lens(
      p, left, [](const Label& l) { return tuple_label({star(), l.render()}); },
      [](const Label&, const Label& e) { return e[1].render(); });
  return {fwd, bwd};
}

Iso tensor_right_unit(const FinPoly& p) {
  FinPoly left = tensor(p, y());
  Lens fwd = rule_lens(
      left, p, [](const Label& l) { return l[0].render(); },
      [](const Label&, const Label& e) { return tuple_label({e.render(), star()}); });
  Lens bwd = rule_lens(
      p, left, [](const Label& l) { return tuple_label({l.render(), star()}); },
      [](const Label&, const Label& e) { return e[0].render(); });
  return {fwd, bwd};
}

Iso tensor_symmetry(const FinPoly& p, const FinPoly& q) {
  auto swap = [](const Label& l) { return tuple_label({l[1].render(), l[0].render()}); };
  auto dir = [&](const Label&, const Label& e) { return swap(e); };
  return {rule_lens(tensor(p, q), tensor(q, p), swap, dir), rule_lens(tensor(q, p), tensor(p, q), swap, dir)};
}

Iso compose_assoc(const FinPoly& p, const FinPoly& q, const FinPoly& r) {
  FinPoly left = compose(compose(p, q), r);
  FinPoly right = compose(p, compose(q, r));
  // ((i,{d:j}),{(d,e):k})  <->  (i,{d:(j,{e:k})})
  Lens fwd = rule_lens(
      left, right,
      [&](const Label& l) {
        const Label& inner = l[0];
        const Label& outer_map = l[1];
        Entries entries;
        for (std::size_t n = 0; n < inner[1].size(); ++n) {
          std::string d = inner[1].key(n).render();
          std::string j = inner[1].value(n).render();
          Entries sub;
          for (const auto& e : q.dirs(q.index_of(j)))
            sub.emplace_back(e, outer_map.at(tuple_label({d, e})).render());
          entries.emplace_back(d, tuple_label({j, map_label(sub)}));
        }
        return tuple_label({inner[0].render(), map_label(entries)});
      },
      [](const Label&, const Label& e) {
        return tuple_label({tuple_label({e[0].render(), e[1][0].render()}), e[1][1].render()});
      });
  Lens bwd = rule_lens(
      right, left,
      [](const Label& l) {
        Entries first, second;
        for (std::size_t n = 0; n < l[1].size(); ++n) {
          std::string d = l[1].key(n).render();
          const Label& sub = l[1].value(n);
          first.emplace_back(d, sub[0].render());
          for (std::size_t m = 0; m < sub[1].size(); ++m)
            second.emplace_back(tuple_label({d, sub[1].key(m).render()}), sub[1].value(m).render());
        }
        return tuple_label({tuple_label({l[0].render(), map_label(first)}), map_label(second)});
      },
      [](const Label&, const Label& e) {
        return tuple_label({e[0][0].render(), tuple_label({e[0][1].render(), e[1].render()})});
      });
  return {fwd, bwd};
}

Iso compose_left_unit(const FinPoly& p) {
  FinPoly left = compose(y(), p);
  Lens fwd = rule_lens(
      left, p, [](const Label& l) { return l[1].value(0).render(); },
      [](const Label&, const Label& e) { return tuple_label({star(), e.render()}); });
  Lens bwd = rule_lens(
      p, left,
      [](const Label& l) {
        Entries m{{star(), l.render()}};
        return tuple_label({star(), map_label(m)});
      },
      [](const Label&, const Label& e) { return e[1].render(); });
  return {fwd, bwd};
}

Iso compose_right_unit(const FinPoly& p) {
  FinPoly left = compose(p, y());
  Lens fwd = rule_lens(
      left, p, [](const Label& l) { return l[0].render(); },
      [](const Label&, const Label& e) { return tuple_label({e.render(), star()}); });
  Lens bwd = Lens::from_rules(
      p, left,
      [&](std::size_t i) {
        Entries m;
        for (const auto& d : p.dirs(i)) m.emplace_back(d, star());
        return tuple_label({p.label(i), map_label(m)});
      },
      [](std::size_t, const std::string& e) { return parse_label(e)[0].render(); });
  return {fwd, bwd};
}

// ---------------------------------------------------------------------------

Lens duoidal(const FinPoly& p1, const FinPoly& p2, const FinPoly& q1, const FinPoly& q2) {
  FinPoly dom = tensor(compose(p1, p2), compose(q1, q2));
  FinPoly cod = compose(tensor(p1, q1), tensor(p2, q2));
  return rule_lens(
      dom, cod,
      [&](const Label& l) {
        const Label& left = l[0];
        const Label& right = l[1];
        std::string i1 = left[0].render();
        std::string j1 = right[0].render();
        Entries entries;
        for (const auto& d : p1.dirs(p1.index_of(i1)))
          for (const auto& e : q1.dirs(q1.index_of(j1)))
            entries.emplace_back(tuple_label({d, e}),
                                 tuple_label({left[1].at(d).render(), right[1].at(e).render()}));
        return tuple_label({tuple_label({i1, j1}), map_label(entries)});
      },
      [](const Label&, const Label& e) {
        // ((d,e),(d2,e2)) -> ((d,d2),(e,e2))
        return tuple_label({tuple_label({e[0][0].render(), e[1][0].render()}),
                            tuple_label({e[0][1].render(), e[1][1].render()})});
      });
}

Iso distribute_left(const FinPoly& p, const FinPoly& q, const FinPoly& r, const FinPoly& s) {
  FinPoly left = compose(sum(product(p, q), r), s);
  FinPoly right = sum(product(compose(p, s), compose(q, s)), compose(r, s));
  Lens fwd = rule_lens(
      left, right,
      [](const Label& l) {
        const Label& head = l[0];
        const Label& m = l[1];
        if (head.tag == 1) return inj_label(1, tuple_label({head.payload().render(), m.render()}));
        Entries mp, mq;
        for (std::size_t n = 0; n < m.size(); ++n) {
          const Label& k = m.key(n);
          (k.tag == 0 ? mp : mq).emplace_back(k.payload().render(), m.value(n).render());
        }
        const Label& ij = head.payload();
        return inj_label(0, tuple_label({tuple_label({ij[0].render(), map_label(mp)}),
                                         tuple_label({ij[1].render(), map_label(mq)})}));
      },
      [](const Label& l, const Label& e) {
        if (l[0].tag == 1) return e.render();
        // in0((d,t)) -> (in0(d),t), in1((e,t)) -> (in1(e),t)
        const Label& dt = e.payload();
        return tuple_label({inj_label(e.tag, dt[0].render()), dt[1].render()});
      });
  Lens bwd = rule_lens(
      right, left,
      [](const Label& l) {
        const Label& body = l.payload();
        if (l.tag == 1) return tuple_label({inj_label(1, body[0].render()), body[1].render()});
        Entries m;
        for (std::size_t side = 0; side < 2; ++side) {
          const Label& part = body[side][1];
          for (std::size_t n = 0; n < part.size(); ++n)
            m.emplace_back(inj_label(side, part.key(n).render()), part.value(n).render());
        }
        return tuple_label(
            {inj_label(0, tuple_label({body[0][0].render(), body[1][0].render()})), map_label(m)});
      },
      [](const Label& l, const Label& e) {
        if (l.tag == 1) return e.render();
        const Label& d = e[0];
        return inj_label(d.tag, tuple_label({d.payload().render(), e[1].render()}));
      });
  return {fwd, bwd};
}

Iso complete_distributivity_instance(const std::vector<std::vector<FinPoly>>& family) {
  std::vector<FinPoly> sums;
  std::vector<std::size_t> radix;
  for (const auto& row : family) {
    sums.push_back(sum_all(row));
    radix.push_back(row.size());
  }
  FinPoly left = product_all(sums);
  std::vector<FinPoly> terms;
  bool any = true;
  for (auto n : radix) any = any && n > 0;
  if (any) {
    std::vector<std::size_t> idx(family.size(), 0);
    do {
      std::vector<FinPoly> factors;
      for (std::size_t a = 0; a < family.size(); ++a) factors.push_back(family[a][idx[a]]);
      terms.push_back(product_all(factors));
    } while (advance(idx, radix));
  }
  FinPoly right = sum_all(terms);
  auto choice_index = [&](const std::vector<std::size_t>& c) {
    std::size_t k = 0;
    for (std::size_t a = 0; a < c.size(); ++a) k = k * radix[a] + c[a];
    return k;
  };
  Lens fwd = rule_lens(
      left, right,
      [&](const Label& l) {
        std::vector<std::size_t> c;
        std::vector<std::string> parts;
        for (std::size_t a = 0; a < l.size(); ++a) {
          c.push_back(l[a].tag);
          parts.push_back(l[a].payload().render());
        }
        return inj_label(choice_index(c), tuple_label(parts));
      },
      same_dir);
  Lens bwd = rule_lens(
      right, left,
      [&](const Label& l) {
        std::size_t k = l.tag;
        std::vector<std::size_t> c(radix.size());
        for (std::size_t a = radix.size(); a-- > 0;) {
          c[a] = k % radix[a];
          k /= radix[a];
        }
        const Label& body = l.payload();
        std::vector<std::string> parts;
        for (std::size_t a = 0; a < c.size(); ++a) parts.push_back(inj_label(c[a], body[a].render()));
        return tuple_label(parts);
      },
      same_dir);
  return {fwd, bwd};
}

// ---------------------------------------------------------------------------
// Currying

}  // namespace polydyn
