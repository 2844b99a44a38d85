use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use orbicalc_core::bundles::StableBundle;
use orbicalc_core::character::character_table_shared;
use orbicalc_core::corpus::{read_group_file, Corpus};
use orbicalc_core::homs::{hom_classes, rep_hom_classes, HomClass};
use orbicalc_core::localize::{check_filtered, check_right_multiplicative, localize_hom, verify_universal_property, RmsViolation};
use orbicalc_core::nerve::{cell_census, homology, nerve_chain_complex, ChainMode, QuotientCategory};
use orbicalc_core::real::{real_irreps_shared, RealIrrepTable};
use orbicalc_core::stable_maps::{cross_check_abstract_enumeration, map_group, Variant};
use orbicalc_core::transversality::{derived_class_detector, RepInput, Verdict};
use orbicalc_core::{Error, Result};
use serde_json::{json, Value};

use crate::input::{load_category, load_group, load_matrix_rep};
use crate::manifest::RunManifest;
use crate::Command;

pub enum Output {
    Json(Value),
    Text(String),
}

pub fn dispatch(command: &Command, manifest: &mut RunManifest) -> Result<Output> {
    match command {
        Command::Group { group } => group_cmd(group, manifest).map(Output::Json),
        Command::Irreps { group, text } => irreps_cmd(group, *text, manifest),
        Command::Homs { g, h, injective } => homs_cmd(g, h, *injective, manifest).map(Output::Json),
        Command::Bundles { group } => bundles_cmd(group, manifest).map(Output::Json),
        Command::StableMaps { g, h, variant, cross_check } => {
            stable_maps_cmd(g, h, variant.parse()?, *cross_check, manifest).map(Output::Json)
        }
        Command::Rstar { max_order, max_dim, census: _, homology, mode } => {
            let mode = if mode == "all" { ChainMode::AllNonIdentity } else { ChainMode::ProperInjections };
            rstar_cmd(*max_order, *max_dim, *homology, mode, manifest).map(Output::Json)
        }
        Command::Localize { category, from, to, universal } => {
            localize_cmd(category, from, to, *universal, manifest).map(Output::Json)
        }
        Command::Detect { group, rep } => detect_cmd(group, rep, manifest).map(Output::Json),
        Command::Corpus { verify, max_order, jobs } => corpus_cmd(*verify, *max_order, *jobs, manifest).map(Output::Json),
    }
}

/// Integers that fit in `i64` as JSON numbers, larger ones as strings.
fn big(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn group_cmd(arg: &str, manifest: &mut RunManifest) -> Result<Value> {
    let lg = load_group(arg, manifest)?;
    let g = &lg.group;
    let classes = g.conjugacy_classes();
    let subgroups = g.subgroup_classes()?;
    let orders = g.element_orders();
    let order_counts: Vec<Value> =
        orders.iter().copied().counts().into_iter().sorted().map(|(o, c)| json!({"order": o, "count": c})).collect();
    Ok(json!({
        "name": lg.name,
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "center_order": g.center().len(),
        "generators": g.generating_set(),
        "element_orders": order_counts,
        "classes": (0..classes.len()).map(|k| {
            let r = classes.representative(k);
            json!({"representative": r, "size": classes.classes[k].len(), "element_order": orders[r]})
        }).collect::<Vec<_>>(),
        "subgroup_classes": subgroups.iter().map(|s| json!({
            "order": s.order(),
            "conjugates": s.conjugates_count,
            "normalizer_order": s.normalizer_order,
            "normal": s.conjugates_count == 1 && s.normalizer_order == g.order(),
            "elements": s.representative,
        })).collect::<Vec<_>>(),
    }))
}

fn real_table(arg: &str, manifest: &mut RunManifest) -> Result<(String, Arc<RealIrrepTable>)> {
    let lg = load_group(arg, manifest)?;
    let table = character_table_shared(lg.group.clone())?;
    Ok((lg.name, Arc::new(orbicalc_core::real::RealIrrepTable::new(table)?)))
}

fn irreps_cmd(arg: &str, text: bool, manifest: &mut RunManifest) -> Result<Output> {
    let (name, real) = real_table(arg, manifest)?;
    let t = real.character_table();
    let classes = t.classes();
    if text {
        let reps: Vec<usize> = (0..classes.len()).map(|k| classes.representative(k)).collect();
        let mut rows: Vec<Vec<String>> = vec![
            std::iter::once("class".to_string()).chain(reps.iter().map(|r| format!("g{r}"))).collect(),
            std::iter::once("size".to_string()).chain(t.class_sizes().iter().map(|s| s.to_string())).collect(),
        ];
        for i in 0..t.len() {
            rows.push(std::iter::once(format!("X.{i}")).chain(t.character(i).iter().map(|v| v.to_string())).collect());
        }
        let widths: Vec<usize> = (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
        let mut out = format!("{name}: order {}, {} classes\n", t.group().order(), classes.len());
        for row in rows {
            let line = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).join("  ");
            let _ = writeln!(out, "{}", line.trim_end());
        }
        let _ = writeln!(out);
        for e in real.entries() {
            let fs: Vec<String> = e.constituents.iter().map(|&c| real.indicators()[c].to_string()).collect();
            let _ = writeln!(out, "R.{}  dim {}  {}  fs [{}]", e.id, e.real_dim, e.end_type.as_str(), fs.join(", "));
        }
        return Ok(Output::Text(out));
    }
    Ok(Output::Json(json!({
        "group": name,
        "order": t.group().order(),
        "class_sizes": t.class_sizes(),
        "class_representatives": (0..classes.len()).map(|k| classes.representative(k)).collect::<Vec<_>>(),
        "characters": t.characters().iter().map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "degrees": t.degrees(),
        "entries": real.entries().iter().map(|e| json!({
            "id": e.id,
            "dim": e.real_dim,
            "end_type": e.end_type.as_str(),
            "fs_indicators": e.constituents.iter().map(|&c| real.indicators()[c]).collect::<Vec<_>>(),
            "constituents": e.constituents,
            "character": e.character.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })))
}

fn class_json(c: &HomClass) -> Value {
    json!({
        "rep": c.representative.images(),
        "generator_images": c.generator_images,
        "orbit": c.orbit_size,
        "centralizer": c.centralizer_order,
        "injective": c.injective,
    })
}

fn homs_cmd(g: &str, h: &str, injective: bool, manifest: &mut RunManifest) -> Result<Value> {
    let lg = load_group(g, manifest)?;
    let lh = load_group(h, manifest)?;
    let mut out = json!({"domain": lg.name, "codomain": lh.name});
    if injective {
        let (classes, report) = rep_hom_classes(&lg.group, &lh.group)?;
        out["classes"] = classes.iter().map(class_json).collect();
        out["cross_check"] = serde_json::to_value(report).expect("report");
    } else {
        let classes = hom_classes(&lg.group, &lh.group)?;
        out["hom_count"] = json!(classes.iter().map(|c| c.orbit_size).sum::<usize>());
        out["classes"] = classes.iter().map(class_json).collect();
    }
    Ok(out)
}

fn bundles_cmd(arg: &str, manifest: &mut RunManifest) -> Result<Value> {
    let (name, real) = real_table(arg, manifest)?;
    let aut = StableBundle::zero(real.clone()).aut_group();
    let width = real.real_type_ids().len();
    let framing_count = if width < 63 { json!(1u64 << width) } else { json!(format!("2^{width}")) };
    Ok(json!({
        "group": name,
        "real_irreps": real.entries().iter().map(|e| json!({"id": e.id, "dim": e.real_dim, "end_type": e.end_type.as_str()})).collect::<Vec<_>>(),
        "stable_aut_contributors": aut.contributors,
        "stable_aut_rank": aut.rank(),
        "framing_bits": width,
        "framing_count": framing_count,
    }))
}

fn stable_maps_cmd(g: &str, h: &str, variant: Variant, cross_check: bool, manifest: &mut RunManifest) -> Result<Value> {
    let lg = load_group(g, manifest)?;
    let lh = load_group(h, manifest)?;
    let p = map_group(&lg.group, &lh.group, variant)?;
    let mut out = json!({
        "domain": lg.name,
        "codomain": lh.name,
        "variant": variant.to_string(),
        "rank": p.rank,
        "generator_classes": p.classes.len(),
        "basis": p.basis_generators().map(|q| json!({
            "K_order": q.subgroup.order(),
            "subgroup_index": q.subgroup_index,
            "g_rep": q.g_class.representative.images(),
            "framing_bits": q.framing.bits.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            "orbit_size": q.orbit_size,
        })).collect::<Vec<_>>(),
    });
    if cross_check {
        let r = cross_check_abstract_enumeration(&lg.group, &lh.group, variant)?;
        out["cross_check"] = serde_json::to_value(r).expect("report");
    }
    Ok(out)
}

fn rstar_cmd(max_order: usize, max_dim: usize, want_homology: bool, mode: ChainMode, manifest: &mut RunManifest) -> Result<Value> {
    let corpus = Corpus::open_default()?;
    let mut groups = Vec::new();
    for e in corpus.entries().iter().filter(|e| e.order <= max_order) {
        let path = corpus.path_of(&e.name);
        let bytes = std::fs::read(&path).map_err(|err| Error::InvalidInput(format!("{}: {err}", path.display())))?;
        manifest.record_input(&format!("corpus:{}", e.name), &bytes);
        groups.push((e.name.clone(), read_group_file(&path)?.1));
    }
    let cat = QuotientCategory::build(&groups, max_order)?;
    let census = cell_census(&cat, max_dim, mode)?;
    let names: Vec<&str> = cat.objects().iter().map(|o| o.name.as_str()).collect();
    let mut out = json!({
        "max_order": max_order,
        "max_dim": max_dim,
        "mode": if mode == ChainMode::AllNonIdentity { "all" } else { "proper" },
        "objects": cat.objects().iter().map(|o| json!({"name": o.name, "order": o.group.order()})).collect::<Vec<_>>(),
        "counts": census.counts(),
    });
    if want_homology {
        let h = homology(&nerve_chain_complex(&cat, &census)?);
        out["homology"] = h
            .iter()
            .map(|x| json!({"degree": x.degree, "betti": x.betti, "torsion": x.torsion.iter().map(big).collect::<Vec<_>>(), "reliable": x.reliable}))
            .collect();
    } else {
        out["cells"] = census
            .cells
            .iter()
            .flatten()
            .map(|c| {
                json!({
                    "dim": c.dim(),
                    "objects": c.objects.iter().map(|&o| names[o]).collect::<Vec<_>>(),
                    "arrows": c.arrows,
                    "isotropy": names[c.isotropy()],
                })
            })
            .collect();
    }
    Ok(out)
}

fn localize_cmd(path: &Path, from: &str, to: &str, universal: bool, manifest: &mut RunManifest) -> Result<Value> {
    let (cat, w) = load_category(path, manifest)?;
    let obj = |name: &str| cat.object_by_name(name).ok_or_else(|| Error::InvalidInput(format!("unknown object {name:?}")));
    let (x, y) = (obj(from)?, obj(to)?);
    let name = |a: usize| cat.arrows()[a].name.clone();
    let verdict = check_right_multiplicative(&cat, &w);
    if let Some(v) = &verdict.violation {
        let witness = match v {
            RmsViolation::MissingIdentity { object } => format!("identity of {} is not in W", cat.objects()[*object]),
            RmsViolation::NotClosed { first, second, composite } => {
                format!("{} then {} gives {}, which is not in W", name(*first), name(*second), name(*composite))
            }
            RmsViolation::Ore { w, f } => format!("Ore square for w = {}, f = {} cannot be completed", name(*w), name(*f)),
            RmsViolation::Cancellability { w, f, g } => {
                format!("{} equalizes {} and {} but nothing in W does so from the source", name(*w), name(*f), name(*g))
            }
        };
        return Err(Error::NotRightMultiplicative(witness));
    }
    let classes = localize_hom(&cat, &w, x, y)?;
    let span = |(wi, h): (usize, usize)| json!({"w": name(wi), "h": name(h)});
    let mut out = json!({
        "from": from,
        "to": to,
        "right_multiplicative": true,
        "filtered": check_filtered(&cat, &w, x),
        "hom_count": classes.len(),
        "classes": classes.iter().map(|c| json!({
            "representative": span(c.representative),
            "members": c.members.iter().map(|&m| span(m)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    if universal {
        out["universal_property"] = json!(verify_universal_property(&cat, &w, x, y)?);
    }
    Ok(out)
}

fn detect_cmd(arg: &str, rep: &str, manifest: &mut RunManifest) -> Result<Value> {
    let lg = load_group(arg, manifest)?;
    let table = character_table_shared(lg.group.clone())?;
    let (source, report) = match rep.parse::<usize>() {
        Ok(id) => {
            let real = real_irreps_shared(lg.group.clone())?;
            if id >= real.len() {
                return Err(Error::InvalidInput(format!("real irrep index {id} out of range (0..{})", real.len())));
            }
            let chi = real.entry(id).character.clone();
            (json!({"real_irrep": id}), derived_class_detector(&table, RepInput::Character(&chi))?)
        }
        Err(_) => {
            let m = load_matrix_rep(Path::new(rep), &lg, manifest)?;
            (json!({"matrix_file": rep, "exact": m.is_exact()}), derived_class_detector(&table, RepInput::Matrices(&m))?)
        }
    };
    Ok(json!({
        "group": lg.name,
        "rep": source,
        "fixed_dim": report.fixed_dim,
        "degree": report.degree,
        "verdict": match report.verdict {
            Verdict::NonzeroCertified => "nonzero_certified",
            Verdict::Inconclusive => "inconclusive",
        },
    }))
}

fn corpus_cmd(verify: bool, max_order: Option<usize>, jobs: usize, manifest: &mut RunManifest) -> Result<Value> {
    let corpus = Corpus::open_default()?;
    let index = std::fs::read(corpus.dir().join("index.json")).map_err(|e| Error::InvalidInput(e.to_string()))?;
    manifest.record_input("corpus:index.json", &index);
    let entries: Vec<_> = corpus.entries().iter().filter(|e| max_order.is_none_or(|m| e.order <= m)).cloned().collect();
    if !verify {
        return Ok(json!({"groups": entries.iter().map(|e| json!({"name": e.name, "order": e.order})).collect::<Vec<_>>()}));
    }
    let check = |name: &str| -> Value {
        let result = corpus.group(name).and_then(|g| {
            let t = character_table_shared(Arc::new(g))?;
            t.verify()?;
            Ok(t.len())
        });
        match result {
            Ok(classes) => json!({"name": name, "ok": true, "classes": classes}),
            Err(e) => json!({"name": name, "ok": false, "error": {"kind": e.kind(), "message": e.to_string()}}),
        }
    };
    let jobs = jobs.max(1);
    let chunk = entries.len().div_ceil(jobs).max(1);
    let results: Vec<Value> = std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|e| check(&e.name)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker")).collect()
    });
    let ok = results.iter().all(|r| r["ok"] == json!(true));
    Ok(json!({"groups": results, "all_ok": ok}))
}
