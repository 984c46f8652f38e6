//! Names every script can use without binding them.

use super::ast::{Node, Script, Type};
use super::lower::{lower_script_env, Value};
use super::parser::parse_with;
use std::collections::HashMap;
use std::sync::OnceLock;

/// The prelude, written in the DSL itself.
pub const SOURCE: &str = "\
let J1 = i*cross(N, L) + a*N + b*N*L_z;
let J2 = -i*cross(N, L) + c*N + d*N*L_z;
let Kplus = J1_plus;
let Kminus = J2_minus;
let Kz = L_z;
Kz
";

pub const TYPES: [(&str, Type); 5] = [
    ("J1", Type::Vector),
    ("J2", Type::Vector),
    ("Kplus", Type::Scalar),
    ("Kminus", Type::Scalar),
    ("Kz", Type::Scalar),
];

pub fn type_of(name: &str) -> Option<Type> {
    TYPES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn script() -> &'static Script {
    static SCRIPT: OnceLock<Script> = OnceLock::new();
    SCRIPT.get_or_init(|| parse_with(SOURCE, false).expect("prelude parses"))
}

/// Definition of a prelude entry, as parsed from [`SOURCE`].
pub fn definition(name: &str) -> Option<&'static Node> {
    script().bindings.iter().find(|b| b.name == name).map(|b| &b.value)
}

/// Lowered prelude entries.
pub fn values() -> &'static HashMap<String, Value> {
    static VALUES: OnceLock<HashMap<String, Value>> = OnceLock::new();
    VALUES.get_or_init(|| {
        lower_script_env(script(), HashMap::new())
            .expect("prelude lowers")
            .0
    })
}
