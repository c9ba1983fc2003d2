//! Differential testing of the engine against the brute-force oracle.
//!
//! Each constraint is tried on every shape of argument pattern: each
//! position either a ground value (every value of the position's domain in
//! turn) or one of at most three variables, plus a few shapes built from
//! set cells and pairs. For each shape the set of variable assignments the
//! engine admits must equal the set the oracle accepts.

use std::collections::BTreeSet;

use setkanren::oracle::{engine_solutions, oracle_solutions, Pat, Problem, Universe, Value};

pub struct Domains {
    pub atoms: Vec<Value>,
    /// Atoms and sets of atoms: candidate set elements.
    pub elems: Vec<Value>,
    /// A dozen small sets, some nested, plus one non-set.
    pub small_sets: Vec<Value>,
    pub all_sets: Vec<Value>,
    pub mixed: Vec<Value>,
    pub everything: Vec<Value>,
    pub alists: Vec<Value>,
    pub short_alists: Vec<Value>,
    pub absent_targets: Vec<Value>,
    pub absent_needles: Vec<Value>,
}

fn dedup(mut v: Vec<Value>) -> Vec<Value> {
    let mut seen = BTreeSet::new();
    v.retain(|x| seen.insert(x.clone()));
    v
}

fn n(k: i64) -> Value {
    Value::Num(k)
}

impl Domains {
    pub fn standard() -> Domains {
        let u = Universe::standard();
        let atoms = u.atoms.clone();
        let all_sets = u.sets();
        let flat: Vec<Value> = all_sets
            .iter()
            .filter(
                |s| matches!(s, Value::Set(xs) if xs.iter().all(|x| !matches!(x, Value::Set(_)))),
            )
            .cloned()
            .collect();
        let mut elems = atoms.clone();
        elems.extend(flat.iter().cloned());

        let e = Value::set([]);
        let mut small_sets = flat.clone();
        small_sets.extend([
            Value::set([e.clone()]),
            Value::set([Value::set([n(0)])]),
            Value::set([n(0), Value::set([n(0)])]),
            Value::set([Value::set([n(0)]), Value::set([n(1)])]),
            Value::sym("a"),
        ]);

        let lists = u.lists();
        let alists = u.alists();
        let short_alists: Vec<Value> = alists.iter().filter(|l| len(l) <= 2).cloned().collect();

        let mut mixed = atoms.clone();
        mixed.extend(all_sets.iter().cloned());
        mixed.extend(lists.iter().cloned());
        mixed.extend(alists.iter().filter(|l| len(l) == 1).cloned());

        let everything = setkanren::oracle::enumerate_terms(&u);

        let mut alist_dom = alists.clone();
        alist_dom.extend(lists.iter().cloned());
        alist_dom.extend([Value::sym("a"), e.clone()]);
        // Improper and non-binding spines.
        alist_dom.push(Value::pair(Value::pair(n(0), n(1)), n(1)));
        alist_dom.push(Value::pair(n(0), Value::Nil));

        let mut absent_targets = atoms.clone();
        absent_targets.extend(all_sets.iter().cloned());
        absent_targets.extend(lists.iter().cloned());
        absent_targets.extend(short_alists.iter().cloned());

        let mut absent_needles = elems.clone();
        absent_needles.extend(lists.iter().filter(|l| len(l) <= 1).cloned());
        absent_needles.push(Value::set([e.clone()]));

        Domains {
            atoms,
            elems: dedup(elems),
            small_sets: dedup(small_sets),
            all_sets,
            mixed: dedup(mixed),
            everything,
            alists: dedup(alist_dom),
            short_alists,
            absent_targets: dedup(absent_targets),
            absent_needles: dedup(absent_needles),
        }
    }
}

fn len(v: &Value) -> usize {
    match v {
        Value::Pair(_, d) => 1 + len(d),
        _ => 0,
    }
}

/// A constraint with the domain of each argument position and extra
/// structured shapes.
pub struct Case {
    pub name: &'static str,
    pub positions: Vec<Vec<Value>>,
    pub shaped: Vec<(Vec<Pat>, Vec<Vec<Value>>)>,
}

pub fn cases(d: &Domains) -> Vec<Case> {
    use Pat::Var as V;
    let s = |es: Vec<Pat>, r: Pat| Pat::set(es, r);
    let val = |k: i64| Pat::Val(n(k));
    let ss = || d.small_sets.clone();
    let el = || d.elems.clone();
    let set_cell_shapes = |arity: usize| -> Vec<(Vec<Pat>, Vec<Vec<Value>>)> {
        // {x | r} in the first position, a variable in the others.
        let mut args = vec![s(vec![V(0)], V(1))];
        let mut doms = vec![d.atoms.clone(), ss()];
        for i in 1..arity {
            args.push(V(1 + i));
            doms.push(ss());
        }
        let mut out = vec![(args, doms)];
        if arity >= 2 {
            // Shared tails: {0 | r} and {x | r}.
            let mut args = vec![s(vec![val(0)], V(0)), s(vec![V(1)], V(0))];
            let mut doms = vec![ss(), d.atoms.clone()];
            if arity == 3 {
                args.push(V(2));
                doms.push(ss());
            }
            out.push((args, doms));
        }
        out
    };

    let mut v = vec![
        Case {
            name: "==",
            positions: vec![d.mixed.clone(), d.mixed.clone()],
            shaped: vec![
                (vec![s(vec![V(0)], V(1)), V(2)], vec![el(), ss(), ss()]),
                (
                    vec![s(vec![V(0)], V(1)), s(vec![V(2)], V(1))],
                    vec![d.atoms.clone(), ss(), d.atoms.clone()],
                ),
                (
                    vec![s(vec![val(1)], V(0)), s(vec![val(2)], V(1))],
                    vec![ss(), ss()],
                ),
                (
                    vec![
                        s(vec![V(0), V(1)], V(2)),
                        Pat::Val(Value::set([n(0), n(1)])),
                    ],
                    vec![el(), el(), ss()],
                ),
                (
                    vec![s(vec![val(1)], V(0)), s(vec![val(1), val(1)], V(0))],
                    vec![d.all_sets.clone()],
                ),
                (
                    vec![Pat::cons(V(0), V(1)), V(2)],
                    vec![d.atoms.clone(), d.mixed.clone(), d.mixed.clone()],
                ),
            ],
        },
        Case {
            name: "=/=",
            positions: vec![d.mixed.clone(), d.mixed.clone()],
            shaped: vec![
                (vec![s(vec![V(0)], V(1)), V(2)], vec![el(), ss(), ss()]),
                (
                    vec![s(vec![val(1)], V(0)), Pat::Val(Value::set([n(1)]))],
                    vec![ss()],
                ),
                (
                    vec![s(vec![V(0)], V(1)), s(vec![V(2)], V(1))],
                    vec![d.atoms.clone(), ss(), d.atoms.clone()],
                ),
                (
                    vec![Pat::cons(V(0), V(1)), Pat::cons(val(1), V(2))],
                    vec![d.atoms.clone(), d.atoms.clone(), d.atoms.clone()],
                ),
            ],
        },
        Case {
            name: "seto",
            positions: vec![d.everything.clone()],
            shaped: vec![],
        },
        Case {
            name: "symbolo",
            positions: vec![d.everything.clone()],
            shaped: vec![],
        },
        Case {
            name: "numbero",
            positions: vec![d.everything.clone()],
            shaped: vec![],
        },
        Case {
            name: "listo",
            positions: vec![d.everything.clone()],
            shaped: vec![(
                vec![Pat::cons(V(0), V(1))],
                vec![d.atoms.clone(), d.everything.clone()],
            )],
        },
        Case {
            name: "!ino",
            positions: vec![el(), d.all_sets.clone()],
            shaped: set_shapes(d, 2, true),
        },
        Case {
            name: "ino",
            positions: vec![el(), d.all_sets.clone()],
            shaped: set_shapes(d, 2, true),
        },
        Case {
            name: "disjo",
            positions: vec![d.all_sets.clone(), d.all_sets.clone()],
            shaped: set_cell_shapes(2),
        },
        Case {
            name: "!disjo",
            positions: vec![ss(), ss()],
            shaped: set_cell_shapes(2),
        },
        Case {
            name: "uniono",
            positions: vec![ss(), ss(), ss()],
            shaped: set_cell_shapes(3),
        },
        Case {
            name: "!uniono",
            positions: vec![ss(), ss(), ss()],
            shaped: set_cell_shapes(3),
        },
        Case {
            name: "union+o",
            positions: vec![ss(), ss(), ss()],
            shaped: set_cell_shapes(3),
        },
        Case {
            name: "subseteqo",
            positions: vec![d.all_sets.clone(), d.all_sets.clone()],
            shaped: set_cell_shapes(2),
        },
        Case {
            name: "subseto",
            positions: vec![ss(), ss()],
            shaped: set_cell_shapes(2),
        },
        Case {
            name: "subtracto",
            positions: vec![ss(), el(), ss()],
            shaped: vec![(
                vec![s(vec![V(0)], V(1)), V(0), V(2)],
                vec![d.atoms.clone(), ss(), ss()],
            )],
        },
        Case {
            name: "freeo",
            positions: vec![d.atoms.clone(), d.alists.clone()],
            shaped: vec![(
                vec![V(0), Pat::cons(Pat::cons(V(1), val(0)), V(2))],
                vec![d.atoms.clone(), d.atoms.clone(), d.short_alists.clone()],
            )],
        },
        Case {
            name: "lookupo",
            positions: vec![d.atoms.clone(), d.alists.clone(), d.atoms.clone()],
            shaped: vec![(
                vec![
                    V(0),
                    Pat::cons(Pat::cons(V(1), V(2)), Pat::Val(Value::Nil)),
                    V(2),
                ],
                vec![d.atoms.clone(), d.atoms.clone(), d.atoms.clone()],
            )],
        },
        Case {
            name: "sub-absento",
            positions: vec![d.absent_needles.clone(), d.absent_targets.clone()],
            shaped: absent_shapes(d),
        },
        Case {
            name: "absento",
            positions: vec![d.absent_needles.clone(), d.absent_targets.clone()],
            shaped: absent_shapes(d),
        },
    ];
    v.sort_by_key(|c| c.name);
    v
}

fn set_shapes(d: &Domains, _arity: usize, member: bool) -> Vec<(Vec<Pat>, Vec<Vec<Value>>)> {
    use Pat::Var as V;
    let mut out = vec![(
        vec![V(0), Pat::set(vec![V(1)], V(2))],
        vec![d.atoms.clone(), d.atoms.clone(), d.small_sets.clone()],
    )];
    if member {
        // The element also occurs inside the set: {2 p 2}.
        out.push((
            vec![
                Pat::Val(Value::Num(2)),
                Pat::set(
                    vec![Pat::Val(Value::Num(2)), V(0), Pat::Val(Value::Num(2))],
                    Pat::Val(Value::set([])),
                ),
            ],
            vec![d.elems.clone()],
        ));
        out.push((
            vec![V(0), Pat::set(vec![Pat::Val(Value::Num(1))], V(0))],
            vec![d.small_sets.clone()],
        ));
    }
    out
}

fn absent_shapes(d: &Domains) -> Vec<(Vec<Pat>, Vec<Vec<Value>>)> {
    use Pat::Var as V;
    vec![
        (
            vec![V(0), Pat::set(vec![Pat::Val(Value::Num(1))], V(1))],
            vec![d.absent_needles.clone(), d.small_sets.clone()],
        ),
        (
            vec![V(0), Pat::cons(V(1), V(2))],
            vec![d.elems.clone(), d.elems.clone(), d.short_alists.clone()],
        ),
    ]
}

/// Positions' labels: `None` for ground, `Some(i)` for variable `i`, in
/// restricted-growth order so each variable pattern appears once.
fn shapes(arity: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Option<usize>>| {
                let next = prefix.iter().flatten().max().map_or(0, |m| m + 1);
                (0..=next.min(2))
                    .map(Some)
                    .chain([None])
                    .map(move |l| {
                        let mut p = prefix.clone();
                        p.push(l);
                        p
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn product(doms: &[&Vec<Value>]) -> Vec<Vec<Value>> {
    let mut out: Vec<Vec<Value>> = vec![Vec::new()];
    for d in doms {
        out = out
            .into_iter()
            .flat_map(|p| {
                d.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Every problem instance for a case.
pub fn problems(case: &Case) -> Vec<Problem> {
    let mut out = Vec::new();
    for shape in shapes(case.positions.len()) {
        let nvars = shape.iter().flatten().max().map_or(0, |m| m + 1);
        let mut domains: Vec<Vec<Value>> = vec![Vec::new(); nvars];
        for (pos, label) in shape.iter().enumerate() {
            if let Some(i) = label {
                domains[*i].extend(case.positions[pos].iter().cloned());
            }
        }
        let domains: Vec<Vec<Value>> = domains.into_iter().map(dedup).collect();
        let ground_positions: Vec<usize> =
            (0..shape.len()).filter(|p| shape[*p].is_none()).collect();
        let ground_doms: Vec<&Vec<Value>> = ground_positions
            .iter()
            .map(|p| &case.positions[*p])
            .collect();
        for ground in product(&ground_doms) {
            let mut g = ground.into_iter();
            let args = shape
                .iter()
                .map(|l| match l {
                    Some(i) => Pat::Var(*i),
                    None => Pat::Val(g.next().expect("one value per ground position")),
                })
                .collect();
            out.push(Problem {
                name: case.name.to_string(),
                args,
                domains: domains.clone(),
            });
        }
    }
    for (args, domains) in &case.shaped {
        out.push(Problem {
            name: case.name.to_string(),
            args: args.clone(),
            domains: domains.clone(),
        });
    }
    out
}

pub struct Report {
    pub problems: usize,
    pub assignments: usize,
    pub mismatches: Vec<String>,
}

/// Compare engine and oracle on every problem of `case`.
pub fn check(case: &Case) -> Report {
    let mut report = Report {
        problems: 0,
        assignments: 0,
        mismatches: Vec::new(),
    };
    for p in problems(case) {
        report.problems += 1;
        report.assignments += p.domains.iter().map(Vec::len).product::<usize>();
        let want = oracle_solutions(&p);
        let got = engine_solutions(&p);
        if want != got {
            let show = |xs: Vec<&Vec<Value>>| {
                xs.iter()
                    .take(3)
                    .map(|env| {
                        env.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    })
                    .collect::<Vec<_>>()
                    .join(" | ")
            };
            let args: Vec<String> = p.args.iter().map(|a| format!("{a:?}")).collect();
            report.mismatches.push(format!(
                "({} {}): engine misses [{}]; engine extra [{}]",
                p.name,
                args.join(" "),
                show(want.difference(&got).collect()),
                show(got.difference(&want).collect()),
            ));
        }
    }
    report
}
