use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wmds_core::characters::{character_gt, character_weyl_oracle, weight_sum_identity};
use wmds_core::coefficient::{gamma_a, gamma_a_cases, gamma_b, gamma_b_cases};
use wmds_core::pattern::{enumerate_patterns, k_from_weight, verify_k_sum};
use wmds_core::root_system::{is_positive, rational_vec};
use wmds_core::stable::{phi_w_typed, typed_roots};
use wmds_core::tableau::{pattern_from_tableau, tableau_from_pattern, tableau_stats, ShiftedTableau};
use wmds_core::*;

fn weyl_element(r: usize) -> impl Strategy<Value = WeylElement> {
    (Just(Vec::from_iter(0..r)).prop_shuffle(), prop::collection::vec(prop::bool::ANY, r))
        .prop_map(|(sigma, signs)| {
            let eps = signs.into_iter().map(|s| if s { -1 } else { 1 }).collect();
            WeylElement::new(sigma, eps).unwrap()
        })
}

fn twist(max_rank: usize, max_l: u32) -> impl Strategy<Value = LambdaTwist> {
    (1..=max_rank)
        .prop_flat_map(move |r| prop::collection::vec(0..=max_l, r))
        .prop_map(|l| LambdaTwist::new(l).unwrap())
}

/// A weakly decreasing nonnegative top row.
fn partition(max_rank: usize, max_entry: i64) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_rank)
        .prop_flat_map(move |r| prop::collection::vec(0..=max_entry, r))
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
}

fn gauss_value(n: u32) -> impl Strategy<Value = GaussValue> {
    let term = (-3i64..=3, 0u32..3, prop::collection::vec(1u32..n.max(2), 0..3));
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        let mut out = GaussValue::zero(n);
        for (c, e, symbols) in terms {
            let symbols: Vec<u32> = if n == 1 { vec![] } else { symbols };
            out += &GaussValue::monomial(n, c.into(), e, &symbols);
        }
        out
    })
}

fn laurent(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    let term = (prop::collection::vec(-2i64..=2, nvars), -3i64..=3);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        let mut out = LaurentPoly::zero(nvars);
        for (exp, c) in terms {
            out.add_term(exp, BigRational::from_integer(c.into()));
        }
        out
    })
}

fn word_lengths(r: usize) -> BTreeMap<WeylElement, usize> {
    let gens: Vec<WeylElement> = (1..=r).map(|i| WeylElement::simple_reflection(r, i).unwrap()).collect();
    let mut dist = BTreeMap::from([(WeylElement::identity(r), 0)]);
    let mut queue = VecDeque::from([WeylElement::identity(r)]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for g in &gens {
            let next = w.compose(g);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

#[test]
fn s_action_orbit_has_group_order() {
    for r in 1..=3 {
        let rs = RootSystemC::new(r).unwrap();
        let start = rational_vec(&[(2, 7), (3, 11), (5, 13)][..r]);
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for i in 1..=r {
                let t = rs.s_action(i, &s).unwrap();
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let order: usize = (1..=r).product::<usize>() << r;
        assert_eq!(seen.len(), order);
    }
}

#[test]
fn inversion_set_size_is_word_length() {
    for r in 1..=3 {
        let rs = RootSystemC::new(r).unwrap();
        let lengths = word_lengths(r);
        assert_eq!(lengths.len(), WeylElement::all(r).len());
        for (w, len) in lengths {
            assert_eq!(rs.phi_w(&w).len(), len, "{w}");
            let typed: usize = phi_w_typed(&w).iter().map(Vec::len).sum();
            assert_eq!(typed, len);
            let mut coords: Vec<Vec<i64>> = phi_w_typed(&w).into_iter().flatten().map(|t| t.root).collect();
            coords.sort();
            let mut expected: Vec<Vec<i64>> = rs.phi_w(&w).into_iter().map(|root| root.coords).collect();
            expected.sort();
            assert_eq!(coords, expected);
            let mut every: Vec<Vec<i64>> = typed_roots(&w).into_iter().map(|t| t.root).collect();
            every.sort();
            let mut positive: Vec<Vec<i64>> = rs.positive_roots().iter().map(|root| root.coords.clone()).collect();
            positive.sort();
            assert_eq!(every, positive);
        }
    }
}

#[test]
fn gt_count_matches_dimension_formula() {
    for r in 1..=3usize {
        let rs = RootSystemC::new(r).unwrap();
        let mut tops = vec![vec![]];
        for _ in 0..r {
            tops = tops
                .into_iter()
                .flat_map(|t: Vec<i64>| {
                    let hi = t.last().copied().unwrap_or(6);
                    (0..=hi).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        for top in tops {
            if r == 3 && top[0] > 4 {
                continue;
            }
            let mu: Vec<i64> = top.iter().rev().copied().collect();
            let count = pattern::count_patterns(&top).unwrap();
            assert_eq!(BigInt::from(count), rs.weyl_dimension(&mu), "{top:?}");
        }
    }
}

#[test]
fn gamma_long_and_short_forms_agree_on_strict_patterns() {
    for l in [vec![0], vec![2], vec![0, 1], vec![1, 0], vec![0, 0, 0], vec![1, 0, 0]] {
        let twist = LambdaTwist::new(l).unwrap();
        for n in [1, 2, 3, 5] {
            for p in enumerate_patterns(&twist.top_row()).unwrap() {
                if !p.is_strict() {
                    continue;
                }
                for pos in p.positions() {
                    let (short, long) = match pos {
                        Position::A { i, j } => (gamma_a(&p, i, j, n).unwrap(), gamma_a_cases(&p, i, j, n).unwrap()),
                        Position::B { i, j } => (gamma_b(&p, i, j, n).unwrap(), gamma_b_cases(&p, i, j, n).unwrap()),
                    };
                    assert_eq!(short, long, "{p} {pos:?} n={n}");
                }
            }
        }
    }
}

#[test]
fn primitive_gauss_sums_have_modulus_sqrt_p() {
    for (n, p) in [(3u32, 7u64), (5, 11), (3, 13)] {
        let ctx = ArithContext::new(n, p).unwrap();
        for s in 1..n {
            let z = ctx.numeric_eval(&GaussValue::symbol(n, i64::from(s))).unwrap();
            assert!((z.norm() - (p as f64).sqrt()).abs() < 1e-9);
        }
    }
}

#[test]
fn pattern_g_bounded_by_q_power() {
    let ctx = ArithContext::new(3, 7).unwrap();
    for l in [vec![0, 0], vec![1, 0]] {
        for p in enumerate_patterns(&LambdaTwist::new(l).unwrap().top_row()).unwrap() {
            let g = pattern_G(&p, 3).unwrap();
            let size: i64 = p.k().unwrap().iter().sum();
            let z = ctx.numeric_eval(&g).unwrap();
            assert!(z.norm() < 7f64.powi(size as i32) || size == 0 && z.norm() <= 1.0 + 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_group_laws(r in 1usize..=4, seed in any::<u64>()) {
        let all = WeylElement::all(r);
        let pick = |k: u64| all[(k % all.len() as u64) as usize].clone();
        let (a, b, c) = (pick(seed), pick(seed / 7 + 3), pick(seed / 131 + 11));
        let e = WeylElement::identity(r);
        prop_assert_eq!(a.compose(&e), a.clone());
        prop_assert_eq!(a.compose(&a.inverse()), e.clone());
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        let v: Vec<i64> = (1..=r as i64).map(|x| 3 * x - 1).collect();
        prop_assert_eq!(a.compose(&b).act(&v), a.act(&b.act(&v)));
    }

    #[test]
    fn s_action_is_an_involution(r in 1usize..=4, i in 1usize..=4, nums in prop::collection::vec(-9i64..=9, 4)) {
        prop_assume!(i <= r);
        let rs = RootSystemC::new(r).unwrap();
        let s: Vec<BigRational> = nums[..r].iter().map(|x| BigRational::new((*x).into(), 3.into())).collect();
        let once = rs.s_action(i, &s).unwrap();
        prop_assert_eq!(rs.s_action(i, &once).unwrap(), s);
    }

    #[test]
    fn d_lambda_positive(t in twist(4, 3)) {
        let rs = RootSystemC::new(t.rank()).unwrap();
        for root in rs.positive_roots() {
            prop_assert!(rs.d_lambda(&root.coords, &t).unwrap() > 0);
        }
    }

    #[test]
    fn positive_roots_are_positive(w in (1usize..=4).prop_flat_map(weyl_element)) {
        let rs = RootSystemC::new(w.rank()).unwrap();
        for root in rs.phi_w(&w) {
            prop_assert!(is_positive(&root.coords));
            prop_assert!(!is_positive(&w.act(&root.coords)));
        }
    }

    #[test]
    fn twist_partial_sums(t in twist(5, 6)) {
        let big = t.big_l();
        prop_assert!(big.windows(2).all(|w| w[0] < w[1]));
        for j in 0..t.rank() {
            let prev = if j == 0 { 0 } else { big[j - 1] };
            prop_assert_eq!(big[j] - prev, i64::from(t.l()[j]) + 1);
        }
    }

    #[test]
    fn patterns_validate_and_resist_mutation(t in twist(3, 2), pick in any::<prop::sample::Index>(), delta in prop::sample::select(vec![-1i64, 1])) {
        let patterns = enumerate_patterns(&t.top_row()).unwrap();
        let p = pick.get(&patterns);
        prop_assert!(p.validate().is_ok());
        prop_assert!(verify_k_sum(p));
        for pos in p.positions() {
            let (lo, hi) = p.bounds(pos).unwrap();
            let bad = if delta > 0 { hi + 1 } else { lo - 1 };
            let mut a = p.a_rows().to_vec();
            let mut b = p.b_rows().to_vec();
            match pos {
                Position::A { i, j } => a[i][j - i - 1] = bad,
                Position::B { i, j } => b[i - 1][j - i] = bad,
            }
            prop_assert!(GTPattern::new(p.rank(), a, b).is_err());
        }
    }

    #[test]
    fn k_matches_weight_recursion(t in twist(3, 2), pick in any::<prop::sample::Index>()) {
        let patterns = enumerate_patterns(&t.top_row()).unwrap();
        let p = pick.get(&patterns);
        let k = p.k().unwrap();
        let wgt = p.weight();
        let big = t.big_l();
        let r = t.rank();
        prop_assert_eq!(k_from_weight(&wgt, &t).unwrap(), k.clone());
        let first = if r > 1 { k[1] } else { 0 };
        prop_assert_eq!(2 * k[0] - first, big[0] + wgt[0]);
        for i in 1..r {
            let next = if i + 1 < r { k[i + 1] } else { 0 };
            prop_assert_eq!(k[i] - next, big[i] + wgt[i]);
        }
    }

    #[test]
    fn stable_patterns_have_no_generic_entries(t in twist(3, 2)) {
        for p in pattern::stable_patterns(&t.top_row()).unwrap() {
            prop_assert_eq!(p.class_count(EntryClass::Generic), 0);
        }
    }

    #[test]
    fn weight_multiset_is_weyl_invariant(top in partition(3, 3), w in (1usize..=3).prop_flat_map(weyl_element)) {
        prop_assume!(top.len() == w.rank());
        let mut before: Vec<Vec<i64>> = enumerate_patterns(&top).unwrap().iter().map(GTPattern::weight).collect();
        let mut after: Vec<Vec<i64>> = before.iter().map(|v| w.act(v)).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn gauss_ring_laws(
        (a, b, c) in prop::sample::select(vec![1u32, 2, 3, 5])
            .prop_flat_map(|n| (gauss_value(n), gauss_value(n), gauss_value(n)))
    ) {
        let n = a.degree();
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.clone() * GaussValue::one(n), a.clone());
        prop_assert_eq!(a.clone() + GaussValue::zero(n), a);
    }

    #[test]
    fn gauss_json_roundtrip(value in prop::sample::select(vec![1u32, 3, 4]).prop_flat_map(gauss_value)) {
        let n = value.degree();
        let json = serde_json::to_value(&value).unwrap();
        prop_assert_eq!(GaussValue::from_json(&json, n).unwrap(), value);
    }

    #[test]
    fn pattern_json_roundtrip(t in twist(3, 2), pick in any::<prop::sample::Index>()) {
        let patterns = enumerate_patterns(&t.top_row()).unwrap();
        let p = pick.get(&patterns);
        let text = serde_json::to_string(p).unwrap();
        let back: GTPattern = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, p);
    }

    #[test]
    fn tableau_bijection_and_stats(t in twist(3, 2), pick in any::<prop::sample::Index>()) {
        let strict: Vec<GTPattern> = enumerate_patterns(&t.top_row()).unwrap().into_iter().filter(GTPattern::is_strict).collect();
        prop_assume!(!strict.is_empty());
        let p = pick.get(&strict);
        let tab = tableau_from_pattern(p).unwrap();
        prop_assert_eq!(&pattern_from_tableau(&tab).unwrap(), p);
        let stats = tableau_stats(&tab);
        let r = t.rank() as i64;
        prop_assert_eq!(&stats.wgt, &p.weight());
        prop_assert!(stats.str >= r);
        prop_assert!(stats.height + r * (r + 1) / 2 >= 0);
        prop_assert!(stats.height + r * (r + 1) / 2 <= r * r);
        let text = serde_json::to_string(&tab).unwrap();
        let back: ShiftedTableau = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, tab);
    }

    #[test]
    fn htable_json_roundtrip(t in twist(2, 1), n in prop::sample::select(vec![1u32, 3])) {
        let table = h_table(&t, n).unwrap();
        let json = serde_json::to_value(&table).unwrap();
        prop_assert_eq!(HTable::from_json(&json).unwrap(), table);
    }

    #[test]
    fn htable_support_in_weight_multiset(t in twist(3, 1), n in prop::sample::select(vec![1u32, 2, 3])) {
        let table = h_table(&t, n).unwrap();
        let weights: BTreeSet<Vec<i64>> = enumerate_patterns(&t.top_row()).unwrap().iter().map(GTPattern::weight).collect();
        let top = t.lambda_plus_rho();
        prop_assert!(table.value(&vec![0; t.rank()]).is_one());
        for k in table.nonzero_keys() {
            let shift = wmds_core::root_system::from_simple_root_coords(k);
            let target: Vec<i64> = top.iter().zip(&shift).map(|(a, b)| a - b).collect();
            prop_assert!(weights.contains(&target), "k={:?}", k);
        }
    }

    #[test]
    fn characters_agree_and_are_invariant(top in partition(3, 3), w in (1usize..=3).prop_flat_map(weyl_element)) {
        prop_assume!(top.len() == w.rank() && top.iter().sum::<i64>() <= 6);
        let ch = character_gt(&top).unwrap();
        prop_assert_eq!(&ch, &character_weyl_oracle(&top).unwrap());
        let r = top.len();
        let mut moved = LaurentPoly::zero(r + 2);
        for (exp, c) in ch.terms() {
            let mut e = w.act(&exp[..r]);
            e.extend_from_slice(&exp[r..]);
            moved.add_term(e, c.clone());
        }
        prop_assert_eq!(moved, ch);
    }

    #[test]
    fn tableau_weight_sums(t in twist(3, 1)) {
        prop_assert!(weight_sum_identity(&t).unwrap());
    }

    #[test]
    fn laurent_division_inverts_multiplication(a in laurent(3), b in laurent(3)) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a.clone());
        let json = serde_json::to_value(&prod).unwrap();
        prop_assert_eq!(LaurentPoly::from_json(&json, 3).unwrap(), prod);
    }
}
