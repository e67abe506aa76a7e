//! Word output in the same token grammar the parser accepts, with runs of
//! one letter compressed to `name^k`.

use artin::Word;

use crate::parse::NameTable;

pub fn format_word(w: &Word, names: &NameTable) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let name = names.name(l.name());
        let signed = if l.is_positive() {
            run as i64
        } else {
            -(run as i64)
        };
        if signed == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{}^{}", name, signed));
        }
        i += run;
    }
    parts.join(" ")
}
