//! Text, JSON and DOT views of a base point computation. Point ids are
//! 1-based in every format.

use std::fmt::Write;

use basepoints_core::algebra::{BiPoly, Rational};
use basepoints_core::basepoints::{BasePointsResult, ValueTable};
use basepoints_core::cluster::{proximity_matrix, Cluster};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Serialize)]
struct PointJson {
    id: usize,
    parents: Vec<usize>,
    kind: &'static str,
    level: u32,
}

#[derive(Serialize)]
struct GraphJson {
    nodes: Vec<NodeJson>,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct NodeJson {
    id: usize,
    label: i64,
}

#[derive(Serialize)]
struct TableJson {
    points: Vec<PointJson>,
    generator_values: Vec<Vec<i64>>,
    fixed_values: Vec<i64>,
    min_values: Vec<i64>,
    h_values: Vec<i64>,
}

#[derive(Serialize)]
struct IntermediatesJson {
    singular: Option<TableJson>,
    free_completed: Option<TableJson>,
    satellite_completed: Option<TableJson>,
    multiplicities: Vec<i64>,
    kept: Vec<usize>,
    fixed_singular: Vec<usize>,
}

#[derive(Serialize)]
struct ResultJson {
    generators: Vec<String>,
    fixed_part: String,
    points: Vec<PointJson>,
    proximity_matrix: Vec<Vec<i64>>,
    values: Vec<i64>,
    multiplicities: Vec<i64>,
    dual_graph: GraphJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    intermediates: Option<IntermediatesJson>,
}

fn points_json(c: &Cluster) -> Vec<PointJson> {
    c.points()
        .iter()
        .map(|p| PointJson {
            id: p.id + 1,
            parents: p.proximate_to().map(|q| q + 1).collect(),
            kind: if p.is_satellite() { "satellite" } else { "free" },
            level: p.level,
        })
        .collect()
}

fn table_json(t: &ValueTable) -> TableJson {
    TableJson {
        points: points_json(&t.cluster),
        generator_values: t.generator_values.clone(),
        fixed_values: t.fixed_values.clone(),
        min_values: t.min_values.clone(),
        h_values: t.h_values.clone(),
    }
}

fn matrix(c: &Cluster) -> Vec<Vec<i64>> {
    proximity_matrix(c).expect("result clusters are ordered").rows().to_vec()
}

fn one_based(ids: &[usize]) -> Vec<usize> {
    ids.iter().map(|i| i + 1).collect()
}

pub fn render(generators: &[BiPoly<Rational>], r: &BasePointsResult, format: Format, intermediates: bool) -> String {
    match format {
        Format::Dot => r.dual_graph.to_dot(),
        Format::Json => {
            let a = &r.audit;
            let doc = ResultJson {
                generators: generators.iter().map(|g| g.to_string()).collect(),
                fixed_part: a.fixed_part.clone(),
                points: points_json(&r.cluster),
                proximity_matrix: matrix(&r.cluster),
                values: r.values.clone(),
                multiplicities: r.multiplicities.clone(),
                dual_graph: GraphJson {
                    nodes: r
                        .dual_graph
                        .labels
                        .iter()
                        .enumerate()
                        .map(|(i, &l)| NodeJson { id: i + 1, label: l })
                        .collect(),
                    edges: r.dual_graph.edges.iter().map(|&(p, q)| [p + 1, q + 1]).collect(),
                },
                intermediates: intermediates.then(|| IntermediatesJson {
                    singular: a.singular.as_ref().map(table_json),
                    free_completed: a.free_completed.as_ref().map(table_json),
                    satellite_completed: a.satellite_completed.as_ref().map(table_json),
                    multiplicities: a.multiplicities.clone(),
                    kept: one_based(&a.kept),
                    fixed_singular: one_based(&a.fixed_singular),
                }),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text(generators, r, intermediates),
    }
}

fn row(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_matrix(s: &mut String, c: &Cluster) {
    let m = matrix(c);
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    for r in m {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
        writeln!(s, "  {}", cells.join(" ")).unwrap();
    }
}

fn write_points(s: &mut String, c: &Cluster) {
    for p in c.points() {
        let kind = match (p.first_parent, p.second_parent) {
            (None, _) => "origin".to_string(),
            (Some(f), None) => format!("free, proximate to p{}", f + 1),
            (Some(f), Some(g)) => format!("satellite, proximate to p{} and p{}", f + 1, g + 1),
        };
        writeln!(s, "  p{}: {}", p.id + 1, kind).unwrap();
    }
}

fn write_table(s: &mut String, title: &str, t: &ValueTable) {
    writeln!(s, "\n{title}: {} points", t.len()).unwrap();
    write_points(s, &t.cluster);
    writeln!(s, "proximity matrix:").unwrap();
    write_matrix(s, &t.cluster);
    for (i, v) in t.generator_values.iter().enumerate() {
        writeln!(s, "v(f{}) = [{}]", i + 1, row(v)).unwrap();
    }
    writeln!(s, "v(g) = [{}]", row(&t.fixed_values)).unwrap();
    writeln!(s, "v = [{}]", row(&t.min_values)).unwrap();
}

fn text(generators: &[BiPoly<Rational>], r: &BasePointsResult, intermediates: bool) -> String {
    let mut s = String::new();
    writeln!(s, "generators:").unwrap();
    for (i, g) in generators.iter().enumerate() {
        writeln!(s, "  a{} = {}", i + 1, g).unwrap();
    }
    if !r.audit.fixed_part.is_empty() {
        writeln!(s, "fixed part: {}", r.audit.fixed_part).unwrap();
    }
    if intermediates {
        let a = &r.audit;
        if let Some(t) = &a.singular {
            write_table(&mut s, "singular points of the reduced product", t);
        }
        if let Some(t) = &a.free_completed {
            write_table(&mut s, "with free base points", t);
        }
        if let Some(t) = &a.satellite_completed {
            write_table(&mut s, "with satellite base points", t);
            writeln!(s, "e = [{}]", row(&a.multiplicities)).unwrap();
        }
        writeln!(s).unwrap();
    }
    writeln!(s, "base points: {}", r.cluster.len()).unwrap();
    write_points(&mut s, &r.cluster);
    writeln!(s, "proximity matrix:").unwrap();
    write_matrix(&mut s, &r.cluster);
    writeln!(s, "values = [{}]", row(&r.values)).unwrap();
    writeln!(s, "multiplicities = [{}]", row(&r.multiplicities)).unwrap();
    s
}
