//! Machine-readable reports and aligned-text table rendering. Reports carry
//! no timing data, so a fixed (spec, seed) pair reproduces them byte for
//! byte; timings go to stderr.

use mackey_engine::green::K0Table;
use mackey_engine::report::CheckReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub scope: String,
    pub results: Vec<ResultItem>,
    pub summary: Summary,
}

#[derive(Serialize)]
pub struct ResultItem {
    pub check: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
}

impl Report {
    pub fn from_check(command: &str, seed: u64, scope: &str, report: &CheckReport) -> Report {
        let results: Vec<ResultItem> = report
            .items
            .iter()
            .map(|item| ResultItem {
                check: item.name.clone(),
                status: if item.passed { "pass" } else { "fail" }.to_string(),
                witness: item.witness.clone(),
            })
            .collect();
        let failed = report.items.iter().filter(|i| !i.passed).count();
        Report {
            command: command.to_string(),
            seed,
            scope: scope.to_string(),
            results,
            summary: Summary {
                total: report.items.len(),
                failed,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Serialize)]
pub struct TablesJson {
    pub subgroups: Vec<SubgroupJson>,
    pub restriction: Vec<MapJson>,
    pub induction: Vec<MapJson>,
    pub conjugation: Vec<ConjJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fusion: Option<Vec<FusionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
pub struct SubgroupJson {
    pub index: usize,
    pub elements: Vec<usize>,
    pub simple_dims: Vec<usize>,
    pub end_degrees: Vec<usize>,
}

#[derive(Serialize)]
pub struct MapJson {
    pub from: usize,
    pub to: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct ConjJson {
    pub from: usize,
    pub element: usize,
    pub to: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct FusionJson {
    pub subgroup: usize,
    /// `product[i][j]` = class vector of S_i ⊗ S_j.
    pub product: Vec<Vec<Vec<i64>>>,
}

fn matrix_rows(m: &mackey_engine::green::IntMat) -> Vec<Vec<i64>> {
    (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.at(r, c)).collect())
        .collect()
}

pub fn tables_to_json(table: &K0Table) -> TablesJson {
    let subgroups = table
        .bases
        .iter()
        .enumerate()
        .map(|(index, b)| SubgroupJson {
            index,
            elements: b.sub.elems().to_vec(),
            simple_dims: b.dims.clone(),
            end_degrees: b.end_degrees.clone(),
        })
        .collect();
    let restriction = table
        .res
        .iter()
        .map(|(&(h, k), m)| MapJson {
            from: h,
            to: k,
            matrix: matrix_rows(m),
        })
        .collect();
    let induction = table
        .ind
        .iter()
        .map(|(&(h, k), m)| MapJson {
            from: k,
            to: h,
            matrix: matrix_rows(m),
        })
        .collect();
    let conjugation = table
        .conj
        .iter()
        .map(|(&(h, x), (t, m))| ConjJson {
            from: h,
            element: x,
            to: *t,
            matrix: matrix_rows(m),
        })
        .collect();
    let fusion = table.fusion.as_ref().map(|f| {
        f.iter()
            .enumerate()
            .map(|(subgroup, product)| FusionJson {
                subgroup,
                product: product.clone(),
            })
            .collect()
    });
    TablesJson {
        subgroups,
        restriction,
        induction,
        conjugation,
        fusion,
        unit: table.unit.clone(),
    }
}

fn render_matrix(out: &mut String, rows: &[Vec<i64>]) {
    if rows.is_empty() || rows[0].is_empty() {
        out.push_str("  (empty)\n");
        return;
    }
    let width = rows
        .iter()
        .flat_map(|r| r.iter())
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    for row in rows {
        out.push_str("  [");
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{v:>width$}"));
        }
        out.push_str("]\n");
    }
}

/// Human-readable aligned text for the decategorified tables.
pub fn tables_to_text(table: &K0Table) -> String {
    let mut out = String::new();
    out.push_str("Grothendieck-group tables\n");
    out.push_str("=========================\n\n");
    for (i, b) in table.bases.iter().enumerate() {
        let elems: Vec<String> = b.sub.elems().iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "subgroup #{i} = {{{}}}  simples: dims {:?}, endomorphism degrees {:?}\n",
            elems.join(","),
            b.dims,
            b.end_degrees
        ));
    }
    out.push_str("\nrestriction maps R^H_K : K0(H) -> K0(K)\n");
    for (&(h, k), m) in &table.res {
        out.push_str(&format!("R from #{h} to #{k}:\n"));
        render_matrix(&mut out, &matrix_rows(m));
    }
    out.push_str("\ninduction maps I^H_K : K0(K) -> K0(H)\n");
    for (&(h, k), m) in &table.ind {
        out.push_str(&format!("I from #{k} to #{h}:\n"));
        render_matrix(&mut out, &matrix_rows(m));
    }
    out.push_str("\nconjugation maps c_(H,x) : K0(H) -> K0(xH)\n");
    for (&(h, x), (t, m)) in &table.conj {
        out.push_str(&format!("c from #{h} by element {x} to #{t}:\n"));
        render_matrix(&mut out, &matrix_rows(m));
    }
    if let (Some(fusion), Some(unit)) = (&table.fusion, &table.unit) {
        out.push_str("\nfusion constants (monoidal backend)\n");
        for (i, per_sub) in fusion.iter().enumerate() {
            out.push_str(&format!("subgroup #{i}: unit class {:?}\n", unit[i]));
            for (a, row) in per_sub.iter().enumerate() {
                for (b, class) in row.iter().enumerate() {
                    out.push_str(&format!("  S{a} ⊗ S{b} = {class:?}\n"));
                }
            }
        }
    }
    out
}
