#pragma once

#include "orbistar/deformation.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace orbistar {

// ----- cocycle residuals ---------------------------------------------------

// a * phi1(b,c) - phi1(a*b, c) + phi1(a, b*c) - phi1(a,b) * c~ ; zero iff the
// first deformation map is a cocycle for the crossed product.
inline YPoly check_hochschild_phi1(const YPoly& a, const YPoly& b, const YPoly& c) {
    return moyal_star(a, phi(1, b, c)) - phi(1, moyal_star(a, b), c) +
           phi(1, a, moyal_star(b, c)) - moyal_star(phi(1, a, b), twist(c));
}

// Second-order consistency of the deformation series, as dictated by
// associativity at order u^2:
//   -a*phi2(b,c) + phi2(a*b,c) - phi2(a,b*c) + phi2(a,b)*c
//   + phi1(phi1(a,b), c~) - phi1(a, phi1(b,c)) = 0.
inline YPoly check_second_order(const YPoly& a, const YPoly& b, const YPoly& c) {
    return -moyal_star(a, phi(2, b, c)) + phi(2, moyal_star(a, b), c) -
           phi(2, a, moyal_star(b, c)) + moyal_star(phi(2, a, b), c) +
           phi(1, phi(1, a, b), twist(c)) - phi(1, a, phi(1, b, c));
}

// Commutative limit: -a.phi1(b,c) + phi1(a.b,c) - phi1(a,b.c) + phi1(a,b).c~
// with pointwise products, evaluated at hbar = 0.
inline YPoly check_commutative_cocycle(const YPoly& a, const YPoly& b, const YPoly& c) {
    YPoly r = -(a * phi(1, b, c)) + phi(1, a * b, c) - phi(1, a, b * c) +
              phi(1, a, b) * twist(c);
    const Scalar zero = 0;
    return r.substitute_params(&zero, nullptr);
}

// ----- rewriting oracle ------------------------------------------------------

enum class PbwLetter : int { Q1 = 0, Q2 = 1, R = 2 };

struct PbwWord {
    std::vector<PbwLetter> letters;
    ParamPoly coeff;

    bool operator==(const PbwWord& o) const { return letters == o.letters && coeff == o.coeff; }
};

// Rewrite to the q1-before-q2-before-R normal form with
//   q2 q1 -> q1 q2 + 2 hbar + 2 u R,  R q_a -> -q_a R,  R R -> 1.
// Each step strictly reduces (inversions, R-depth), so rewriting terminates;
// redex choice (leftmost/rightmost) is exposed for confluence testing.
inline std::vector<PbwWord> pbw_normal_form(const std::vector<PbwWord>& input,
                                            bool rightmost = false) {
    std::map<std::vector<PbwLetter>, ParamPoly> done;
    std::vector<PbwWord> work(input);
    auto push = [&work](std::vector<PbwLetter> w, ParamPoly c) {
        if (!c.is_zero()) work.push_back({std::move(w), std::move(c)});
    };
    while (!work.empty()) {
        PbwWord w = std::move(work.back());
        work.pop_back();
        if (w.coeff.is_zero()) continue;
        const auto& L = w.letters;
        int redex = -1;
        const int last = static_cast<int>(L.size()) - 1;
        for (int pos = 0; pos < last; ++pos) {
            int i = rightmost ? last - 1 - pos : pos;
            bool swap_q = L[i] == PbwLetter::Q2 && L[i + 1] == PbwLetter::Q1;
            bool r_move = L[i] == PbwLetter::R && L[i + 1] != PbwLetter::R;
            bool r_square = L[i] == PbwLetter::R && L[i + 1] == PbwLetter::R;
            if (swap_q || r_move || r_square) {
                redex = i;
                break;
            }
        }
        if (redex < 0) {
            auto it = done.find(L);
            if (it == done.end()) {
                done.emplace(L, w.coeff);
            } else {
                it->second += w.coeff;
                if (it->second.is_zero()) done.erase(it);
            }
            continue;
        }
        std::vector<PbwLetter> head(L.begin(), L.begin() + redex);
        std::vector<PbwLetter> tail(L.begin() + redex + 2, L.end());
        auto glue = [&head, &tail](std::initializer_list<PbwLetter> mid) {
            std::vector<PbwLetter> r = head;
            r.insert(r.end(), mid.begin(), mid.end());
            r.insert(r.end(), tail.begin(), tail.end());
            return r;
        };
        if (L[redex] == PbwLetter::Q2 && L[redex + 1] == PbwLetter::Q1) {
            push(glue({PbwLetter::Q1, PbwLetter::Q2}), w.coeff);
            push(glue({}), w.coeff * ParamPoly::hbar().scaled(2));
            push(glue({PbwLetter::R}), w.coeff * ParamPoly::u().scaled(2));
        } else if (L[redex] == PbwLetter::R && L[redex + 1] == PbwLetter::R) {
            push(glue({}), w.coeff);
        } else {
            push(glue({L[redex + 1], PbwLetter::R}), -w.coeff);
        }
    }
    std::vector<PbwWord> out;
    out.reserve(done.size());
    for (auto& [l, c] : done) out.push_back({l, std::move(c)});
    return out;
}

// Weyl-symmetric word image of a polynomial: each monomial y1^a y2^b becomes
// the average over all arrangements of a copies of q1 and b of q2.
inline std::vector<PbwWord> pbw_symmetrized(const YPoly& f) {
    std::vector<PbwWord> out;
    for (const auto& [k, c] : f.terms) {
        const int a = k.first, b = k.second;
        std::vector<PbwLetter> word(a, PbwLetter::Q1);
        word.insert(word.end(), b, PbwLetter::Q2);
        Scalar norm = Scalar(1) / binomial(a + b, a);
        do {
            out.push_back({word, c.scaled(norm)});
        } while (std::next_permutation(word.begin(), word.end()));
    }
    return out;
}

inline std::vector<PbwWord> pbw_concat(const std::vector<PbwWord>& x,
                                       const std::vector<PbwWord>& y) {
    std::vector<PbwWord> out;
    out.reserve(x.size() * y.size());
    for (const auto& wx : x)
        for (const auto& wy : y) {
            PbwWord w{wx.letters, wx.coeff * wy.coeff};
            w.letters.insert(w.letters.end(), wy.letters.begin(), wy.letters.end());
            out.push_back(std::move(w));
        }
    return out;
}

// Read a normal form back as an element: q1^a q2^b [R] -> y1^a y2^b [R].
inline OrbifoldElement pbw_to_element(const std::vector<PbwWord>& nf) {
    OrbifoldElement out;
    for (const auto& w : nf) {
        int a = 0, b = 0, r = 0;
        for (auto l : w.letters) {
            if (l == PbwLetter::Q1) ++a;
            if (l == PbwLetter::Q2) ++b;
            if (l == PbwLetter::R) ++r;
        }
        (r % 2 ? out.part1 : out.part0) += YPoly::monomial(a, b, w.coeff);
    }
    return out;
}

// ----- Casimir ---------------------------------------------------------------

enum class CasimirProduct { Star, Circle, Pbw };

// C2 = -1/2 t_ab t^ab with indices raised by the convention's eps_up,
// evaluated under the chosen product. The pbw route symmetrizes each t into
// words first and reduces the concatenation with the rewriting oracle.
inline OrbifoldElement casimir_element(CasimirProduct which) {
    OrbifoldElement acc;
    std::vector<PbwWord> acc_words;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            YPoly low = sp2_bilinear(a, b);
            YPoly up = (raised_y(a) * raised_y(b)).scaled(Scalar(-1) / 2);
            switch (which) {
                case CasimirProduct::Star:
                    acc.part0 += moyal_star(low, up);
                    break;
                case CasimirProduct::Circle:
                    acc = acc + circle_product(OrbifoldElement(low), OrbifoldElement(up));
                    break;
                case CasimirProduct::Pbw: {
                    auto prod = pbw_concat(pbw_symmetrized(low), pbw_symmetrized(up));
                    acc_words.insert(acc_words.end(), prod.begin(), prod.end());
                    break;
                }
            }
        }
    if (which == CasimirProduct::Pbw)
        acc = pbw_to_element(pbw_normal_form(acc_words));
    return acc.scaled(Scalar(-1) / 2);
}

// ----- projectors ------------------------------------------------------------

struct CheckReport {
    std::vector<std::pair<std::string, bool>> items;

    void record(std::string name, bool ok) { items.emplace_back(std::move(name), ok); }
    bool all_passed() const {
        for (const auto& [n, ok] : items)
            if (!ok) return false;
        return true;
    }
};

// Pi_pm = (1 pm R)/2: idempotence, orthogonality, completeness, and the
// sector annihilation of odd/even elements, under both products.
inline CheckReport projector_checks() {
    CheckReport rep;
    const OrbifoldElement one(YPoly(1));
    const OrbifoldElement pp(YPoly(Scalar(1) / 2), YPoly(Scalar(1) / 2));
    const OrbifoldElement pm(YPoly(Scalar(1) / 2), YPoly(Scalar(-1) / 2));
    struct Law {
        std::string name;
        OrbifoldElement (*mul)(const OrbifoldElement&, const OrbifoldElement&);
    };
    const Law laws[2] = {{"star", [](const OrbifoldElement& x, const OrbifoldElement& y) {
                              return crossed_star(x, y);
                          }},
                         {"circ", [](const OrbifoldElement& x, const OrbifoldElement& y) {
                              return circle_product(x, y);
                          }}};
    for (const auto& law : laws) {
        auto mul = law.mul;
        rep.record("P+ P+ = P+ (" + law.name + ")", mul(pp, pp) == pp);
        rep.record("P- P- = P- (" + law.name + ")", mul(pm, pm) == pm);
        rep.record("P+ P- = 0 (" + law.name + ")", mul(pp, pm).is_zero());
        rep.record("P- P+ = 0 (" + law.name + ")", mul(pm, pp).is_zero());
        rep.record("P+ + P- = 1 (" + law.name + ")", pp + pm == one);
        for (int a = 1; a <= 2; ++a) {
            OrbifoldElement ya(YPoly::monomial(a == 1, a == 2));
            rep.record("P+ y" + std::to_string(a) + " P+ = 0 (" + law.name + ")",
                       mul(mul(pp, ya), pp).is_zero());
            rep.record("P- y" + std::to_string(a) + " P- = 0 (" + law.name + ")",
                       mul(mul(pm, ya), pm).is_zero());
        }
        OrbifoldElement even(YPoly::monomial(1, 1));
        rep.record("P+ y1y2 P- = 0 (" + law.name + ")", mul(mul(pp, even), pm).is_zero());
        rep.record("P- y1y2 P+ = 0 (" + law.name + ")", mul(mul(pm, even), pp).is_zero());
    }
    return rep;
}

// ----- suite drivers ---------------------------------------------------------

struct SuiteResult {
    bool passed = true;
    long checks = 0;
    std::string detail;

    void fail(const std::string& what) {
        if (passed) detail = what;
        passed = false;
    }
};

namespace detail {

inline std::vector<std::pair<int, int>> monomials_up_to(int d) {
    std::vector<std::pair<int, int>> out;
    for (int tot = 0; tot <= d; ++tot)
        for (int a = 0; a <= tot; ++a) out.push_back({a, tot - a});
    return out;
}

inline OrbifoldElement graded_monomial(std::pair<int, int> e, int sector) {
    YPoly m = YPoly::monomial(e.first, e.second);
    return sector ? OrbifoldElement(YPoly(), m) : OrbifoldElement(m);
}

struct GradedTriple {
    std::pair<int, int> a, b, c;
    int sa, sb, sc;
};

inline std::vector<GradedTriple> graded_triples(int max_total_degree) {
    std::vector<GradedTriple> out;
    auto monos = monomials_up_to(max_total_degree);
    for (auto& a : monos)
        for (auto& b : monos)
            for (auto& c : monos) {
                if (a.first + a.second + b.first + b.second + c.first + c.second >
                    max_total_degree)
                    continue;
                for (int s = 0; s < 8; ++s)
                    out.push_back({a, b, c, s & 1, (s >> 1) & 1, (s >> 2) & 1});
            }
    return out;
}

inline std::string triple_text(const GradedTriple& t) {
    std::ostringstream os;
    os << "(y1^" << t.a.first << " y2^" << t.a.second << " R^" << t.sa << ", y1^" << t.b.first
       << " y2^" << t.b.second << " R^" << t.sb << ", y1^" << t.c.first << " y2^" << t.c.second
       << " R^" << t.sc << ")";
    return os.str();
}

}  // namespace detail

inline SuiteResult verify_associativity(int max_degree) {
    SuiteResult res;
    for (const auto& t : detail::graded_triples(max_degree)) {
        OrbifoldElement A = detail::graded_monomial(t.a, t.sa);
        OrbifoldElement B = detail::graded_monomial(t.b, t.sb);
        OrbifoldElement C = detail::graded_monomial(t.c, t.sc);
        ++res.checks;
        if (!(circle_product(circle_product(A, B), C) ==
              circle_product(A, circle_product(B, C))))
            res.fail("associativity residual at " + detail::triple_text(t));
    }
    return res;
}

inline SuiteResult verify_associativity_random(int count, int max_degree, unsigned seed) {
    SuiteResult res;
    auto triples = detail::graded_triples(max_degree);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, triples.size() - 1);
    for (int i = 0; i < count; ++i) {
        const auto& t = triples[pick(rng)];
        OrbifoldElement A = detail::graded_monomial(t.a, t.sa);
        OrbifoldElement B = detail::graded_monomial(t.b, t.sb);
        OrbifoldElement C = detail::graded_monomial(t.c, t.sc);
        ++res.checks;
        if (!(circle_product(circle_product(A, B), C) ==
              circle_product(A, circle_product(B, C))))
            res.fail("associativity residual at " + detail::triple_text(t));
    }
    return res;
}

namespace detail {

template <typename Residual>
inline SuiteResult run_triple_suite(int max_degree, Residual residual, const char* what) {
    SuiteResult res;
    auto monos = monomials_up_to(max_degree);
    for (auto& a : monos)
        for (auto& b : monos)
            for (auto& c : monos) {
                if (a.first + a.second + b.first + b.second + c.first + c.second > max_degree)
                    continue;
                ++res.checks;
                if (!residual(YPoly::monomial(a.first, a.second),
                              YPoly::monomial(b.first, b.second),
                              YPoly::monomial(c.first, c.second))
                         .is_zero()) {
                    std::ostringstream os;
                    os << what << " residual at (y1^" << a.first << " y2^" << a.second << ", y1^"
                       << b.first << " y2^" << b.second << ", y1^" << c.first << " y2^"
                       << c.second << ")";
                    res.fail(os.str());
                }
            }
    return res;
}

}  // namespace detail

inline SuiteResult verify_cocycle(int max_degree) {
    return detail::run_triple_suite(max_degree, check_hochschild_phi1, "cocycle");
}

inline SuiteResult verify_second_order(int max_degree) {
    return detail::run_triple_suite(max_degree, check_second_order, "second-order");
}

inline SuiteResult verify_commutative_cocycle(int max_degree) {
    return detail::run_triple_suite(max_degree, check_commutative_cocycle, "commutative cocycle");
}

inline SuiteResult verify_casimir(int max_degree) {
    SuiteResult res;
    OrbifoldElement c2 = casimir_element(CasimirProduct::Circle);
    for (auto& m : detail::monomials_up_to(max_degree)) {
        if ((m.first + m.second) % 2) continue;  // centrality holds on the even part
        OrbifoldElement f(YPoly::monomial(m.first, m.second));
        ++res.checks;
        if (!(circle_product(c2, f) - circle_product(f, c2)).is_zero()) {
            std::ostringstream os;
            os << "Casimir does not commute with y1^" << m.first << " y2^" << m.second;
            res.fail(os.str());
        }
    }
    ++res.checks;
    if (!(c2 == casimir_element(CasimirProduct::Pbw)))
        res.fail("circle and word-oracle Casimir values differ");
    ++res.checks;
    OrbifoldElement star_expect(YPoly(ParamPoly::hbar(2).scaled(Scalar(-3) / 4)));
    if (!(casimir_element(CasimirProduct::Star) == star_expect))
        res.fail("star Casimir is not -3/4 hbar^2");
    return res;
}

inline SuiteResult verify_projectors() {
    SuiteResult res;
    CheckReport rep = projector_checks();
    for (const auto& [name, ok] : rep.items) {
        ++res.checks;
        if (!ok) res.fail(name);
    }
    return res;
}

inline SuiteResult verify_pbw(int words, int max_len, unsigned seed) {
    SuiteResult res;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> letter(0, 2);
    for (int i = 0; i < words; ++i) {
        PbwWord w;
        w.coeff = ParamPoly(1);
        int L = len(rng);
        for (int j = 0; j < L; ++j) w.letters.push_back(static_cast<PbwLetter>(letter(rng)));
        ++res.checks;
        if (!(pbw_normal_form({w}) == pbw_normal_form({w}, true))) {
            res.fail("leftmost and rightmost reductions disagree on word " + std::to_string(i));
        }
    }
    // commutator of the degree-one generators, once through each oracle
    ++res.checks;
    std::vector<PbwWord> comm{{{PbwLetter::Q1, PbwLetter::Q2}, ParamPoly(1)},
                              {{PbwLetter::Q2, PbwLetter::Q1}, ParamPoly(-1)}};
    OrbifoldElement via_words = pbw_to_element(pbw_normal_form(comm));
    OrbifoldElement y1(YPoly::y1()), y2(YPoly::y2());
    OrbifoldElement via_circle = circle_product(y1, y2) - circle_product(y2, y1);
    if (!(via_words == via_circle)) res.fail("word and circle commutators of generators differ");
    return res;
}

inline SuiteResult verify_dunkl_associativity(int max_degree) {
    SuiteResult res;
    for (const auto& t : detail::graded_triples(max_degree)) {
        auto mk = [](std::pair<int, int> e, int sector) {
            YPoly m = YPoly::monomial(e.first, e.second);
            return sector ? DunklElement(YPoly(), m) : DunklElement(m);
        };
        DunklElement A = mk(t.a, t.sa), B = mk(t.b, t.sb), C = mk(t.c, t.sc);
        ++res.checks;
        if (!(dunkl_product(dunkl_product(A, B), C) == dunkl_product(A, dunkl_product(B, C))))
            res.fail("Dunkl associativity residual at " + detail::triple_text(t));
    }
    return res;
}

}  // namespace orbistar
