mod common;

use common::{word_set, Naive};
use idcodes::bounds::{check_layer_lemmas, lower_bounds};
use idcodes::construct3::{construct_c1, construct_cl, construct_cq, construct_ct, ext, extend_identifying, one_codeword_per_pipe};
use idcodes::latin::{code_to_latin, cyclic_latin, latin_to_code};
use idcodes::linear::{
    code_from_parity_check, direct_sum_extend, hamming_parity_check, sid_coset_construction, sld_repeated_column,
    ENUMERATION_BUDGET,
};
use idcodes::verify::{hamming_sid_sld_check, HammingMode};
use idcodes::{verify, Code, Exec, Graph, Property};

fn holds<G: Graph>(code: &Code<G>, p: Property) -> bool {
    verify(code, p, Exec::default()).unwrap().holds
}

#[test]
fn cyclic_codes_identify() {
    for q in 2..=8 {
        let c = construct_cq(q).unwrap();
        assert_eq!(c.len(), (q * q) as usize);
        assert!(one_codeword_per_pipe(&c));
        assert!(holds(&c, Property::Id), "q={q}");
    }
}

#[test]
fn small_cyclic_code_matches_oracle() {
    for q in 2..=4 {
        let c = construct_cq(q).unwrap();
        assert!(Naive::hamming(q, 3).identifying(&word_set(&c)));
    }
}

#[test]
fn recursive_family() {
    for t in 1..=3u32 {
        let c = construct_ct(t).unwrap();
        assert_eq!(c.len() as u64, 16u64.pow(t) - 4u64.pow(t - 1));
        assert!(holds(&c, Property::Id), "t={t}");
    }
}

#[test]
fn cl_identifies_off_diagonal() {
    let cl = construct_cl();
    assert!(holds(&cl, Property::Id));
    assert!(!holds(&cl.rehome(cl.graph().full()).unwrap(), Property::Id));
}

#[test]
fn ext_keeps_pipe_structure_in_used_subcubes() {
    let cl = construct_cl();
    let cl = cl.rehome(cl.graph().full()).unwrap();
    let e = ext(&construct_cq(3).unwrap(), &cl).unwrap();
    let g = e.graph();
    let outer = cl.graph();
    for axis in 0..3 {
        for base in (0..g.size()).filter(|&v| g.digit(v, axis) == 0) {
            let pipe = g.pipe_indices(base, axis).unwrap();
            for seg in pipe.chunks(3) {
                let o: Vec<u32> = g.digits(seg[0]).iter().map(|d| d / 3).collect();
                let used = cl.contains(outer.index(&idcodes::Vertex::from_digits(o)).unwrap());
                let count = seg.iter().filter(|&&u| e.contains(u)).count();
                assert_eq!(count, used as usize);
            }
        }
    }
}

#[test]
fn extensions_identify() {
    let c1 = construct_c1();
    for (r, size) in [(8, 63), (9, 80), (10, 99)] {
        let e = extend_identifying(&c1, r).unwrap();
        assert_eq!(e.len(), size);
        assert!(holds(&e, Property::Id), "r={r}");
    }
    let from_c2 = extend_identifying(&construct_cq(3).unwrap(), 7).unwrap();
    assert_eq!(from_c2.len(), 49);
    assert!(holds(&from_c2, Property::Id));
}

#[test]
fn latin_bijection() {
    for q in 2..=8 {
        let sq = cyclic_latin(q);
        let c = latin_to_code(&sq).unwrap();
        assert_eq!(c.len(), q * q);
        assert!(holds(&c, Property::Sld), "q={q}");
        assert_eq!(code_to_latin(&c).unwrap(), sq);
        assert_eq!(lower_bounds(q as u64, 3).unwrap().sld3, Some((q * q) as u64));
    }
}

#[test]
fn latin_removals_break_sld() {
    for q in 2..=5 {
        let c = latin_to_code(&cyclic_latin(q)).unwrap();
        for &w in c.words() {
            let smaller = Code::new(c.graph().clone(), c.words().iter().copied().filter(|&u| u != w)).unwrap();
            assert!(!holds(&smaller, Property::Sld));
        }
    }
}

#[test]
fn hamming_codes_are_perfect() {
    for (q, k) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
        let h = hamming_parity_check(q, k).unwrap();
        let c = code_from_parity_check(&h, ENUMERATION_BUDGET, Exec::default()).unwrap();
        assert_eq!(c.len() as u64, (q as u64).pow((h.n() - k) as u32));
        let g = c.graph();
        for v in g.vertices() {
            assert_eq!(c.i_set_indices(v).len(), 1);
        }
        for (i, &a) in c.words().iter().enumerate() {
            for &b in &c.words()[i + 1..] {
                assert!(g.distance(a, b) >= 3);
            }
        }
        // Columns pairwise non-proportional.
        let f = h.field();
        for i in 0..h.n() {
            for j in 0..h.n() {
                if i != j {
                    for l in 1..q {
                        let scaled: Vec<u32> = h.column(j).iter().map(|&e| f.mul(l, e)).collect();
                        assert_ne!(h.column(i), scaled);
                    }
                }
            }
        }
    }
}

#[test]
fn coset_sid_codes() {
    for (q, k) in [(2, 2), (2, 3), (3, 2)] {
        let c = sid_coset_construction(q, k).unwrap();
        let n = c.graph().n();
        let expect = 3 * (q as usize).pow((n - k) as u32);
        assert_eq!(c.len(), expect);
        assert_eq!(lower_bounds(q as u64, n as u32).unwrap().sid_lower as usize, expect);
        assert!(holds(&c, Property::Sid));
        assert!(hamming_sid_sld_check(&c, HammingMode::Sid, Exec::default()).unwrap().holds);
        for v in c.graph().vertices() {
            assert_eq!(c.i_set_indices(v).len(), 3);
        }
    }
}

#[test]
fn direct_sums_stay_sid() {
    let mut c = sid_coset_construction(2, 2).unwrap();
    for (n, size) in [(4, 12), (5, 24)] {
        c = direct_sum_extend(&c).unwrap();
        assert_eq!((c.graph().n(), c.len()), (n, size));
        assert!(holds(&c, Property::Sid));
    }
}

#[test]
fn repeated_column_sld_codes() {
    for (q, k, l) in [(2, 2, 0), (2, 2, 1), (3, 1, 0), (3, 2, 0)] {
        let c = sld_repeated_column(q, k, l, ENUMERATION_BUDGET).unwrap();
        let n = c.graph().n();
        assert_eq!(n, 3 * ((q as usize).pow(k as u32) - 1) / (q as usize - 1) + l);
        assert_eq!(c.len(), (q as usize).pow((n - k) as u32));
        assert!(holds(&c, Property::Sld), "{q} {k} {l}");
        assert!(holds(&c, Property::Id));
        let g = c.graph();
        for v in g.vertices() {
            let is = c.i_set_indices(v);
            if c.contains(v) {
                assert_eq!(is, vec![v]);
            } else if l == 0 {
                assert_eq!(is.len(), 3);
                assert!(is.iter().all(|&a| is.iter().all(|&b| a == b || g.distance(a, b) == 2)));
            }
        }
    }
    // [1 1 1] over F_3 is the same code as the cyclic Latin square, up to
    // the 0/1-based shift.
    let f = sld_repeated_column(3, 1, 0, ENUMERATION_BUDGET).unwrap();
    let sq = latin_to_code(&cyclic_latin(3)).unwrap();
    assert_eq!(f.len(), sq.len());
    let g = f.graph();
    for &w in f.words() {
        assert_eq!(g.digits(w).iter().sum::<u32>() % 3, 0);
    }
}

#[test]
fn layer_lemmas_on_constructions() {
    let mut codes = vec![construct_c1(), construct_ct(2).unwrap(), extend_identifying(&construct_c1(), 9).unwrap()];
    codes.extend((3..=8).map(|q| construct_cq(q).unwrap()));
    codes.push(extend_identifying(&construct_c1(), 8).unwrap());
    for c in &codes {
        let r = check_layer_lemmas(c, Exec::default()).unwrap();
        assert!(r.all_hold(), "q={}:\n{r}", c.graph().q());
    }
}

#[test]
fn c2_layer_numbers() {
    let r = check_layer_lemmas(&construct_ct(2).unwrap(), Exec::default()).unwrap();
    // 252 = 256 - (sum a) / 3
    assert_eq!(r.sum_a, 12);
    assert!(r.x_size as i64 <= 6 * r.sum_f);
    assert!(r.x_size <= 3 * r.sum_k);
}
