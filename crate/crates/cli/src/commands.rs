use std::collections::BTreeSet;
use std::fmt::Write as _;

use monarith::classes::{
    beta_transfer, class_table, essential_prime_set, essential_report, reduced_class_semigroup, ClassTable,
};
use monarith::invariants::{
    aap_decompose, delta_h_lower, elasticity_via_h0, structure_theorem_report, unions_profile, AapDecomposition,
};
use monarith::monoid::parse_spec;
use monarith::{
    delta_of, enumerate_atoms, factorizations, rho_of, set_of_lengths, AtomList, ExponentVector, MonoidSpec, SearchBox,
};
use serde::Serialize;
use serde_json::json;

use crate::{Command, Failure, Format, Opts, Output};

fn json_out<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("result serialization");
    s.push('\n');
    s
}

fn done(payload: String) -> Result<Output, Failure> {
    Ok(Output {
        payload,
        truncated: false,
    })
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn braces<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    format!("{{{}}}", join(items, ","))
}

fn quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn dispatch(command: Command, opts: &Opts, input: Option<&str>) -> Result<Output, Failure> {
    if command == Command::Aap {
        return aap(opts);
    }
    let text = input.ok_or_else(|| Failure::input("--input is required"))?;
    let spec = parse_spec(text).map_err(|e| Failure::input(format!("invalid spec at {e}")))?;
    if opts.search_box == 0 {
        return Err(Failure::input("--box must be positive"));
    }
    let search_box = SearchBox::uniform(spec.dim(), opts.search_box);
    match command {
        Command::Atoms => atoms(&spec, &search_box, opts),
        Command::Factorize => factorize(&spec, &search_box, opts),
        Command::Lengths => lengths(&spec, &search_box, opts),
        Command::Delta => delta(&spec, &search_box, opts),
        Command::Elasticity => elasticity(&spec, &search_box, opts),
        Command::Unions => unions(&spec, &search_box, opts),
        Command::ClassTable => classes(&spec, &search_box, opts),
        Command::Essential => essential(&spec, &search_box, opts),
        Command::Transfer => transfer(&spec, &search_box, opts),
        Command::Report => report(&spec, &search_box, opts),
        Command::Aap => unreachable!(),
    }
}

fn target(spec: &MonoidSpec, opts: &Opts) -> Result<ExponentVector, Failure> {
    let t = opts
        .target
        .clone()
        .ok_or_else(|| Failure::input("--target is required"))?;
    let x = ExponentVector::new(t);
    spec.check_dim(&x)?;
    Ok(x)
}

fn atoms(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let al = enumerate_atoms(spec, b)?;
    done(match opts.format {
        Format::Json => json_out(&al),
        Format::Csv => {
            let mut s = join(spec.prime_labels().iter().map(|l| quote(l)), ",") + "\n";
            for a in &al.atoms {
                let _ = writeln!(s, "{}", join(a.coords(), ","));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for a in &al.atoms {
                let _ = writeln!(s, "{a}");
            }
            let _ = writeln!(s, "{} atoms, complete: {}", al.len(), al.complete);
            s
        }
    })
}

fn render_factorization(m: &[u32], al: &AtomList) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(&al.atoms)
        .filter(|(k, _)| **k > 0)
        .map(|(k, a)| if *k == 1 { a.to_string() } else { format!("{a}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn factorize(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let x = target(spec, opts)?;
    let al = enumerate_atoms(spec, b)?;
    let fs = factorizations(&al, &x)?;
    done(match opts.format {
        Format::Json => json_out(&json!({
            "target": x,
            "atoms": al.atoms,
            "exact": al.covers(&x),
            "factorizations": fs.iter().map(|f| &f.multiplicities).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("length,");
            s += &join(al.atoms.iter().map(|a| quote(&a.to_string())), ",");
            s.push('\n');
            for f in &fs {
                let _ = writeln!(s, "{},{}", f.length(), join(&f.multiplicities, ","));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for f in &fs {
                let _ = writeln!(
                    s,
                    "{}  (length {})",
                    render_factorization(&f.multiplicities, &al),
                    f.length()
                );
            }
            let _ = writeln!(s, "{} factorizations of {x}, exact: {}", fs.len(), al.covers(&x));
            s
        }
    })
}

fn lengths(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let x = target(spec, opts)?;
    let al = enumerate_atoms(spec, b)?;
    let l = set_of_lengths(&al, &x)?;
    let rho = rho_of(&l);
    done(match opts.format {
        Format::Json => json_out(&json!({"target": x, "lengths": l.values, "elasticity": rho, "exact": l.exact})),
        Format::Csv => "length\n".to_string() + &join(l.values.iter().map(|v| format!("{v}\n")), ""),
        Format::Text => format!("L{x} = {}\nrho = {rho}\nexact: {}\n", braces(&l.values), l.exact),
    })
}

fn delta(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let al = enumerate_atoms(spec, b)?;
    if opts.target.is_some() {
        let x = target(spec, opts)?;
        let l = set_of_lengths(&al, &x)?;
        let d: BTreeSet<u32> = delta_of(&l);
        return done(match opts.format {
            Format::Json => json_out(&json!({"target": x, "lengths": l.values, "distances": d, "exact": l.exact})),
            Format::Csv => "distance\n".to_string() + &join(d.iter().map(|v| format!("{v}\n")), ""),
            Format::Text => format!("Delta(L{x}) = {}\nexact: {}\n", braces(&d), l.exact),
        });
    }
    let r = delta_h_lower(&al, opts.budget)?;
    done(match opts.format {
        Format::Json => json_out(&r),
        Format::Csv => "distance\n".to_string() + &join(r.distances.iter().map(|v| format!("{v}\n")), ""),
        Format::Text => {
            let mut s = format!(
                "Delta(H) contains {}\n{} elements over {} levels examined\n",
                braces(&r.distances),
                r.elements,
                r.levels
            );
            if let Some(f) = r.factoriality {
                let _ = writeln!(
                    s,
                    "structure: {}",
                    serde_json::to_value(f).expect("enum").as_str().unwrap_or("")
                );
            }
            s
        }
    })
}

fn elasticity(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let al = enumerate_atoms(spec, b)?;
    let c = elasticity_via_h0(&al)?;
    done(match opts.format {
        Format::Json => json_out(&json!({"atoms": al.atoms, "certificate": c, "verified": c.verify(&al)})),
        Format::Csv => format!(
            "value,exact,route,long,short\n{},{},{},{},{}\n",
            c.value,
            c.exact,
            serde_json::to_value(c.route).expect("enum").as_str().unwrap_or(""),
            c.witness_pair[0].length(),
            c.witness_pair[1].length()
        ),
        Format::Text => {
            let mut s = format!("{}\nwitness: {}\n", c.value, c.relation(&al));
            if !c.exact {
                s += "exact: false (atom list incomplete; lower bound)\n";
            }
            s
        }
    })
}

fn unions(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let al = enumerate_atoms(spec, b)?;
    let (k_min, k_max) = opts.k;
    let p = unions_profile(&al, k_max, opts.budget)?;
    let ks: Vec<u32> = (k_min..=k_max.min(p.k_max())).collect();
    let payload = match opts.format {
        Format::Json => {
            let rows: Vec<_> = ks
                .iter()
                .map(|k| json!({"k": k, "lambda_k": p.lambda_k[k], "rho_k": p.rho_k[k], "union": p.unions[k].values}))
                .collect();
            json_out(
                &json!({"k_range": [k_min, k_max], "rows": rows, "exact": p.exact, "truncated": p.truncated, "elements": p.elements}),
            )
        }
        Format::Csv => {
            let mut s = String::from("k,lambda_k,rho_k,size_U_k,union\n");
            for k in &ks {
                let u = &p.unions[k];
                let _ = writeln!(
                    s,
                    "{k},{},{},{},{}",
                    p.lambda_k[k],
                    p.rho_k[k],
                    u.len(),
                    quote(&braces(&u.values))
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for k in &ks {
                let _ = writeln!(s, "U_{k} = {}", braces(&p.unions[k].values));
            }
            let _ = writeln!(s, "exact: {}", p.exact);
            if p.truncated {
                let _ = writeln!(s, "truncated after k = {}", p.k_max());
            }
            s
        }
    };
    Ok(Output {
        payload,
        truncated: p.truncated,
    })
}

fn render_aap(a: &AapDecomposition) -> String {
    format!(
        "y = {}\nd = {}\nM = {}\nL- = {}\nL* = {}\nL+ = {}\n",
        a.y,
        a.d,
        a.m,
        braces(&a.l_minus),
        braces(&a.l_star),
        braces(&a.l_plus)
    )
}

fn aap(opts: &Opts) -> Result<Output, Failure> {
    let set = opts.set.clone().ok_or_else(|| Failure::input("--set is required"))?;
    if set.is_empty() {
        return Err(Failure::input("--set must not be empty"));
    }
    if opts.d == Some(0) {
        return Err(Failure::input("--d must be positive"));
    }
    let a = aap_decompose(&set, opts.d);
    done(match (opts.format, &a) {
        (Format::Json, _) => json_out(&json!({"set": set, "decomposition": a})),
        (Format::Csv, Some(a)) => format!(
            "y,d,M,L_minus,L_star,L_plus\n{},{},{},{},{},{}\n",
            a.y,
            a.d,
            a.m,
            quote(&braces(&a.l_minus)),
            quote(&braces(&a.l_star)),
            quote(&braces(&a.l_plus))
        ),
        (Format::Csv, None) => "y,d,M,L_minus,L_star,L_plus\n".into(),
        (Format::Text, Some(a)) => render_aap(a),
        (Format::Text, None) => "no decomposition: elements are not congruent modulo d\n".into(),
    })
}

fn class_text(t: &ClassTable, verdict: &str) -> String {
    let mut s = String::new();
    for (i, c) in t.classes.iter().enumerate() {
        let _ = writeln!(
            s,
            "class {i}: {} ({} members in box)",
            c.representative, c.members_in_box
        );
    }
    let w = (0..t.len()).map(|c| t.label(c).len()).max().unwrap_or(1);
    let _ = writeln!(
        s,
        "{:>w$} | {}",
        "+",
        join((0..t.len()).map(|c| format!("{:>w$}", t.label(c))), " ")
    );
    for (a, row) in t.cayley.iter().enumerate() {
        let cells = row
            .iter()
            .map(|c| format!("{:>w$}", c.map_or_else(|| "?".into(), |c| t.label(c))));
        let _ = writeln!(s, "{:>w$} | {}", t.label(a), join(cells, " "));
    }
    for e in &t.stabilization {
        let _ = writeln!(
            s,
            "ray {}: threshold {}, period {}",
            e.prime,
            e.threshold.map_or("-".into(), |v| v.to_string()),
            e.period.map_or("-".into(), |v| v.to_string())
        );
    }
    let _ = writeln!(s, "certified finite: {}", t.certified_finite);
    if !t.boundary_shell.is_empty() {
        let _ = writeln!(s, "boundary shell: {}", join(&t.boundary_shell, " "));
    }
    let _ = writeln!(s, "verdict: {verdict}");
    s
}

fn classes(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let t = class_table(spec, b, opts.probe)?;
    let (reduced, verdict) = reduced_class_semigroup(&t);
    let verdict = match verdict {
        monarith::classes::CMonoidVerdict::Certified => "C-monoid (certified at this box)",
        monarith::classes::CMonoidVerdict::Inconclusive => "inconclusive at this box",
    };
    done(match opts.format {
        Format::Json => json_out(&json!({
            "table": reduced,
            "associative": t.is_associative(),
            "identity_neutral": t.identity_is_neutral(),
            "congruence": t.is_congruence(),
            "verdict": verdict,
        })),
        Format::Csv => t.cayley_csv(),
        Format::Text => class_text(&reduced, verdict),
    })
}

fn essential(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let al = enumerate_atoms(spec, b)?;
    let r = essential_report(spec, &al, b)?;
    let e = essential_prime_set(spec, opts.power_bound)?;
    let labels = |s: &[usize]| braces(r.labelled(s));
    done(match opts.format {
        Format::Json => json_out(&json!({"report": r, "prime_set": e})),
        Format::Csv => {
            let mut s = String::from("support,minimal\n");
            for sup in &r.supports {
                let _ = writeln!(s, "{},{}", quote(&labels(sup)), r.minimal_essential.contains(sup));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "supports: {}\nminimal essential: {}\nsimple: {}\n",
                join(r.supports.iter().map(|x| labels(x)), " "),
                join(r.minimal_essential.iter().map(|x| labels(x)), " "),
                r.simple
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(s, "witness: {}", labels(w));
            }
            let _ = writeln!(
                s,
                "E = {} (power bound {}, exact: {})",
                braces(e.members.iter().map(|&i| &e.primes[i])),
                opts.power_bound,
                e.exact
            );
            s
        }
    })
}

fn transfer(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let t = class_table(spec, b, opts.probe)?;
    let tr = beta_transfer(spec, &t)?;
    let labels = spec.prime_labels();
    let new_labels = tr.spec.prime_labels();
    done(match opts.format {
        Format::Json => json_out(&tr),
        Format::Csv => {
            let mut s = String::from("prime,merged\n");
            for (i, &g) in tr.merge_map.iter().enumerate() {
                let _ = writeln!(s, "{},{}", quote(&labels[i]), quote(&new_labels[g]));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (i, &g) in tr.merge_map.iter().enumerate() {
                let _ = writeln!(s, "{} -> {}", labels[i], new_labels[g]);
            }
            let _ = writeln!(s, "identity: {}", tr.is_identity());
            let _ = writeln!(s, "{}", tr.spec.to_json_string());
            s
        }
    })
}

fn report(spec: &MonoidSpec, b: &SearchBox, opts: &Opts) -> Result<Output, Failure> {
    let al = enumerate_atoms(spec, b)?;
    let simple = essential_report(spec, &al, b)?.simple;
    let (k_min, k_max) = opts.k;
    let r = structure_theorem_report(&al, k_min, k_max, opts.budget, Some(simple))?;
    let payload = match opts.format {
        Format::Json => json_out(&r),
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    };
    Ok(Output {
        payload,
        truncated: r.truncated,
    })
}
