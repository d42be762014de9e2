//! Drawings of CDPs over a segment: one panel per function with the base
//! line, the lattice points and the graph.

use std::fmt::Write;

use cdp_core::{Cdp, PlFunction, Rat};

fn graph(f: &PlFunction) -> Vec<(i64, i64)> {
    f.graph_vertices().iter().map(|v| (v.0[0], v.0[1])).collect()
}

fn value_range(c: &Cdp) -> (i64, i64) {
    let ys = c.functions().iter().flat_map(|f| graph(f).into_iter().map(|p| p.1));
    let (lo, hi) = ys.fold((0, 0), |(a, b), y| (a.min(y), b.max(y)));
    (lo, hi)
}

fn extent(c: &Cdp) -> (i64, i64) {
    (c.base().vertices()[0].0[0], c.base().vertices()[1].0[0])
}

pub fn breakpoints(f: &PlFunction) -> String {
    graph(f).iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(" ")
}

/// Text panels, one row per integer height and four columns per unit.
pub fn ascii(c: &Cdp) -> String {
    let (x0, x1) = extent(c);
    let (y0, y1) = value_range(c);
    let mut out = String::new();
    for (i, f) in c.functions().iter().enumerate() {
        writeln!(out, "f{}: {}", i + 1, breakpoints(f)).unwrap();
        let cols = ((x1 - x0) * 4 + 1) as usize;
        let mut grid = vec![vec![' '; cols]; (y1 - y0 + 1) as usize];
        for (r, row) in grid.iter_mut().enumerate() {
            for x in x0..=x1 {
                row[((x - x0) * 4) as usize] = '.';
            }
            if y1 - r as i64 == 0 {
                for ch in row.iter_mut() {
                    if *ch == ' ' {
                        *ch = '-';
                    }
                }
            }
        }
        for k in 0..cols {
            let x = Rat::new(x0 * 4 + k as i64, 4);
            let y = f.evaluate(&[x]).expect("inside the base");
            // nearest row, ties upward
            let row = y1 - (y + Rat::new(1, 2)).floor_i64().expect("small value");
            let on_vertex = k % 4 == 0 && graph(f).iter().any(|p| (p.0 - x0) * 4 == k as i64);
            grid[row as usize][k] = if on_vertex { 'o' } else { '*' };
        }
        for (r, row) in grid.iter().enumerate() {
            writeln!(out, "{:>3} {}", y1 - r as i64, row.iter().collect::<String>().trim_end()).unwrap();
        }
        let axis: String = (x0..=x1).map(|x| format!("{x:<4}")).collect();
        writeln!(out, "    {}", axis.trim_end()).unwrap();
    }
    out
}

pub fn tikz(c: &Cdp) -> String {
    let (x0, x1) = extent(c);
    let (y0, y1) = value_range(c);
    let mut out = String::new();
    for f in c.functions() {
        writeln!(out, "\\begin{{tikzpicture}}[scale=0.5]").unwrap();
        writeln!(out, "  \\draw[gray] ({x0},0) -- ({x1},0);").unwrap();
        for x in x0..=x1 {
            for y in y0..=y1 {
                writeln!(out, "  \\fill[gray] ({x},{y}) circle (1.5pt);").unwrap();
            }
        }
        let path: Vec<String> = graph(f).iter().map(|(x, y)| format!("({x},{y})")).collect();
        writeln!(out, "  \\draw[thick] {};", path.join(" -- ")).unwrap();
        writeln!(out, "\\end{{tikzpicture}}").unwrap();
    }
    out
}

pub fn svg(c: &Cdp) -> String {
    const UNIT: i64 = 20;
    let (x0, x1) = extent(c);
    let (y0, y1) = value_range(c);
    let w = (x1 - x0 + 2) * UNIT;
    let h = (y1 - y0 + 2) * UNIT;
    let n = c.n() as i64;
    let px = |x: i64| (x - x0 + 1) * UNIT;
    let py = |y: i64| (y1 - y + 1) * UNIT;
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}">"#, w * n, h).unwrap();
    for (i, f) in c.functions().iter().enumerate() {
        writeln!(out, r#"  <g transform="translate({},0)">"#, i as i64 * w).unwrap();
        writeln!(out, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#, px(x0), py(0), px(x1), py(0)).unwrap();
        for x in x0..=x1 {
            for y in y0..=y1 {
                writeln!(out, r#"    <circle cx="{}" cy="{}" r="2" fill="gray"/>"#, px(x), py(y)).unwrap();
            }
        }
        let pts: Vec<String> = graph(f).iter().map(|&(x, y)| format!("{},{}", px(x), py(y))).collect();
        writeln!(out, r#"    <polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#, pts.join(" ")).unwrap();
        writeln!(out, "  </g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
