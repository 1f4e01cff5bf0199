//! SVG drawing of a laid-out tanglegram.

use std::fmt::Write;

use crate::error::Result;
use crate::instance::TanglegramInstance;
use crate::layout::{leaf_order_nodes, Layout, Side};
use crate::tree::{NodeId, Tree};

/// Canvas geometry. The canvas height follows from the leaf count.
#[derive(Debug, Clone, PartialEq)]
pub struct StyleOptions {
    pub width: f64,
    pub margin: f64,
    /// Horizontal extent of each tree, root to leaves.
    pub tree_width: f64,
    pub leaf_spacing: f64,
    pub font_size: f64,
}

impl Default for StyleOptions {
    fn default() -> Self {
        StyleOptions {
            width: 800.0,
            margin: 20.0,
            tree_width: 200.0,
            leaf_spacing: 20.0,
            font_size: 11.0,
        }
    }
}

struct Placed {
    x: Vec<f64>,
    y: Vec<f64>,
}

/// Leaves at `leaf_x`; an inner node at depth `d` sits `(H - d)` steps away
/// toward the root side, `dir` being -1 on the left and +1 on the right.
fn place(tree: &Tree, swaps: &[bool], leaf_x: f64, dir: f64, style: &StyleOptions) -> Placed {
    let n = tree.len();
    let mut x = vec![leaf_x; n];
    let mut y = vec![0.0; n];
    for (i, leaf) in leaf_order_nodes(tree, swaps).into_iter().enumerate() {
        y[leaf] = style.margin + style.leaf_spacing * i as f64;
    }
    let h = tree.height().max(1) as f64;
    let step = style.tree_width / h;
    // reverse preorder visits children before parents
    for id in (0..n).rev() {
        let kids = tree.children(id);
        if kids.is_empty() {
            continue;
        }
        let (lo, hi) = kids.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &c| {
            (lo.min(y[c]), hi.max(y[c]))
        });
        y[id] = (lo + hi) / 2.0;
        x[id] = leaf_x + dir * step * (h - tree.depth(id) as f64);
    }
    Placed { x, y }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn tree_paths(out: &mut String, tree: &Tree, p: &Placed, side: Side) {
    for id in 0..tree.len() {
        for &c in tree.children(id) {
            writeln!(
                out,
                r#"<path class="tree {side}" d="M {} {} V {} H {}"/>"#,
                p.x[id], p.y[id], p.y[c], p.x[c]
            )
            .unwrap();
        }
    }
}

/// Renders the drawing as a standalone SVG 1.1 document. Inter-tree edges are
/// `<line class="inter">` elements between the two leaf columns.
pub fn render_svg(
    instance: &TanglegramInstance,
    layout: &Layout,
    style: &StyleOptions,
) -> Result<String> {
    layout.check(instance)?;
    let (left, right) = (instance.left(), instance.right());
    let left_x = style.margin + style.tree_width;
    let right_x = style.width - style.margin - style.tree_width;
    let lp = place(left, &layout.left_swaps, left_x, -1.0, style);
    let rp = place(right, &layout.right_swaps, right_x, 1.0, style);
    let height = 2.0 * style.margin + style.leaf_spacing * (instance.n().max(1) - 1) as f64;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{height}" viewBox="0 0 {} {height}">"#,
        style.width, style.width
    )
    .unwrap();
    writeln!(
        out,
        "<style>.tree{{fill:none;stroke:#222;stroke-width:1}} .inter{{stroke:#c33;stroke-width:1}} text{{font-family:sans-serif;font-size:{}px}}</style>",
        style.font_size
    )
    .unwrap();
    tree_paths(&mut out, left, &lp, Side::Left);
    tree_paths(&mut out, right, &rp, Side::Right);

    let leaves: Vec<NodeId> = leaf_order_nodes(left, &layout.left_swaps);
    for &l in &leaves {
        let r = instance.partner_of_left(l);
        writeln!(
            out,
            r#"<line class="inter" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            lp.x[l], lp.y[l], rp.x[r], rp.y[r]
        )
        .unwrap();
    }
    for &l in &leaves {
        let r = instance.partner_of_left(l);
        let label = escape(left.label(l).unwrap());
        writeln!(
            out,
            r#"<text x="{}" y="{}">{label}</text>"#,
            lp.x[l] + 3.0,
            lp.y[l] - 3.0
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{label}</text>"#,
            rp.x[r] - 3.0,
            rp.y[r] - 3.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Segments of every `<line class="inter">` element in `svg`.
pub fn inter_segments(svg: &str) -> Vec<[f64; 4]> {
    svg.lines()
        .filter(|l| l.starts_with(r#"<line class="inter""#))
        .map(|l| {
            let attr = |name: &str| -> f64 {
                let key = format!(r#"{name}=""#);
                let start = l.find(&key).unwrap() + key.len();
                let end = start + l[start..].find('"').unwrap();
                l[start..end].parse().unwrap()
            };
            [attr("x1"), attr("y1"), attr("x2"), attr("y2")]
        })
        .collect()
}

/// Pairs of segments that meet in a point interior to both.
pub fn count_segment_intersections(segments: &[[f64; 4]]) -> u64 {
    fn orient(ax: f64, ay: f64, bx: f64, by: f64, cx: f64, cy: f64) -> f64 {
        (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    }
    let mut count = 0;
    for (i, s) in segments.iter().enumerate() {
        for t in &segments[i + 1..] {
            let d1 = orient(s[0], s[1], s[2], s[3], t[0], t[1]);
            let d2 = orient(s[0], s[1], s[2], s[3], t[2], t[3]);
            let d3 = orient(t[0], t[1], t[2], t[3], s[0], s[1]);
            let d4 = orient(t[0], t[1], t[2], t[3], s[2], s[3]);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::count_crossings;
    use crate::generators::{gen_random, GenShape};
    use crate::newick::parse_newick;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(l: &str, r: &str) -> TanglegramInstance {
        TanglegramInstance::new(parse_newick(l).unwrap(), parse_newick(r).unwrap()).unwrap()
    }

    fn svg_crossings(i: &TanglegramInstance, l: &Layout) -> u64 {
        let svg = render_svg(i, l, &StyleOptions::default()).unwrap();
        count_segment_intersections(&inter_segments(&svg))
    }

    #[test]
    fn two_leaves() {
        let i = inst("(a,b);", "(a,b);");
        assert_eq!(svg_crossings(&i, &Layout::identity(&i)), 0);
        assert_eq!(svg_crossings(&i, &Layout::new(vec![true], vec![false])), 1);
    }

    #[test]
    fn geometry_matches_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..30 {
            let n = rng.gen_range(2..=32);
            let i = gen_random(n, GenShape::RandomBinary, seed).unwrap();
            let l = Layout::new(
                (0..i.left().inner_count()).map(|_| rng.gen()).collect(),
                (0..i.right().inner_count()).map(|_| rng.gen()).collect(),
            );
            assert_eq!(svg_crossings(&i, &l), count_crossings(&i, &l).unwrap());
        }
    }

    #[test]
    fn parents_strictly_toward_root() {
        let i = gen_random(16, GenShape::RandomBinary, 2).unwrap();
        let s = StyleOptions::default();
        let l = Layout::identity(&i);
        let lp = place(i.left(), &l.left_swaps, 220.0, -1.0, &s);
        let rp = place(i.right(), &l.right_swaps, 580.0, 1.0, &s);
        for id in 0..i.left().len() {
            for &c in i.left().children(id) {
                assert!(lp.x[id] < lp.x[c]);
            }
        }
        for id in 0..i.right().len() {
            for &c in i.right().children(id) {
                assert!(rp.x[id] > rp.x[c]);
            }
        }
    }

    #[test]
    fn labels_escaped() {
        let i = inst("('a<b',c);", "(c,'a<b');");
        let svg = render_svg(&i, &Layout::identity(&i), &StyleOptions::default()).unwrap();
        assert!(svg.contains("a&lt;b"));
        assert!(!svg.contains("a<b"));
    }
}
