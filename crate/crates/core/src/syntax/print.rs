use super::Term;

const LETTERS: &str = "abcdefghijklmnpqrstuvwxyz";

/// Prints a closed term in the concrete grammar, inventing binder names.
pub fn print(term: &Term) -> String {
    print_in(term, &[])
}

/// Prints a term whose free variables are named by `names` (last entry is
/// index 0). `None` entries and indices past the context print as `_N`.
pub fn print_in(term: &Term, names: &[Option<String>]) -> String {
    let mut scope: Vec<String> = names
        .iter()
        .enumerate()
        .map(|(i, n)| n.clone().unwrap_or_else(|| format!("_{}", names.len() - 1 - i)))
        .collect();
    let mut out = String::new();
    go(term, &mut scope, 0, &mut out);
    out
}

fn fresh(scope: &[String]) -> String {
    let taken = |n: &str| scope.iter().any(|s| s == n);
    let depth = scope.len();
    let candidates = LETTERS
        .chars()
        .map(|c| c.to_string())
        .skip(depth % LETTERS.len())
        .chain(LETTERS.chars().map(|c| c.to_string()));
    for c in candidates {
        if !taken(&c) {
            return c;
        }
    }
    let mut i = depth;
    loop {
        let n = format!("x{i}");
        if !taken(&n) {
            return n;
        }
        i += 1;
    }
}

fn go(term: &Term, scope: &mut Vec<String>, prec: u8, out: &mut String) {
    match term {
        Term::Var(i) => match scope.len().checked_sub(1 + i) {
            Some(pos) => out.push_str(&scope[pos]),
            None => out.push_str(&format!("_{}", i)),
        },
        Term::Unit => out.push_str("()"),
        Term::Pair(a, b) => {
            out.push('(');
            go(a, scope, 0, out);
            out.push_str(", ");
            go(b, scope, 0, out);
            out.push(')');
        }
        Term::Lam(ty, body) => {
            if prec > 0 {
                out.push('(');
            }
            let name = fresh(scope);
            out.push_str(&format!("\\{name}:{ty}. "));
            scope.push(name);
            go(body, scope, 0, out);
            scope.pop();
            if prec > 0 {
                out.push(')');
            }
        }
        Term::App(f, a) => {
            if prec > 1 {
                out.push('(');
            }
            go(f, scope, 1, out);
            out.push(' ');
            go(a, scope, 2, out);
            if prec > 1 {
                out.push(')');
            }
        }
        Term::Fst(t) | Term::Snd(t) => {
            if prec > 1 {
                out.push('(');
            }
            out.push_str(if matches!(term, Term::Fst(_)) { "fst " } else { "snd " });
            go(t, scope, 2, out);
            if prec > 1 {
                out.push(')');
            }
        }
    }
}
