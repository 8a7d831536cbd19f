//! The committed CSV fixtures are bit-exact renderings of the census table
//! and the σ-triangle.

use permsimple_core::enumerate;

#[test]
fn census_table_matches_fixture() {
    let mut out = String::from("n,s,c,g,b,t,total\n");
    for n in 1..=6 {
        let r = enumerate::census_with(n, 9, 2).unwrap();
        out.push_str(&format!(
            "{n},{},{},{},{},{},{}\n",
            r.s, r.c, r.g, r.b, r.t, r.total
        ));
    }
    assert_eq!(out, include_str!("fixtures/census_table.csv"));
}

#[test]
fn sigma_triangle_matches_fixture() {
    let t = enumerate::sigma_triangle(5);
    let mut out = String::from("n,sigma\n");
    for n in 1..=5 {
        let row: Vec<String> = t.row(n).iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{n},{}\n", row.join(",")));
    }
    assert_eq!(out, include_str!("fixtures/sigma_triangle.csv"));
}
