use exact_field::{Matrix, MPoly, RFunc};

fn poly_to_latex(p: &MPoly) -> String {
    let text = p.to_string();
    let mut out = String::with_capacity(text.len() + 16);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let rest: String = chars[i..].iter().collect();
        if rest.starts_with("hbar") {
            out.push_str("\\hbar ");
            i += 4;
        } else if (chars[i] == 'l' || chars[i] == 'z' || chars[i] == 'y') && chars.get(i + 1) == Some(&'_') {
            let name = if chars[i] == 'l' { "\\ell".to_string() } else { chars[i].to_string() };
            let mut j = i + 2;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let idx: String = chars[i + 2..j].iter().collect();
            out.push_str(&format!("{name}_{{{idx}}}"));
            i = j;
        } else if chars[i] == '^' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let e: String = chars[i + 1..j].iter().collect();
            out.push_str(&format!("^{{{e}}}"));
            i = j;
        } else if chars[i] == '*' {
            i += 1;
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out.trim_end().to_string()
}

/// LaTeX for a rational function, `\frac{num}{den}` unless polynomial.
pub fn rfunc_to_latex(r: &RFunc) -> String {
    if r.is_polynomial() {
        poly_to_latex(r.num())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly_to_latex(r.num()), poly_to_latex(r.den()))
    }
}

/// A `bmatrix` environment with one row per line.
pub fn matrix_to_latex(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| m.row(i).iter().map(rfunc_to_latex).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{bmatrix}}\n{}\n\\end{{bmatrix}}", rows.join(" \\\\\n"))
}
