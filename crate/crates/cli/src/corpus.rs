//! Golden fixtures compiled into the binary. Each case directory holds an
//! `args` line, the files it reads and the `expected` standard output.

pub struct Case {
    pub name: &'static str,
    pub args: &'static str,
    pub input: Option<&'static str>,
    pub queries: Option<&'static str>,
    pub updates: Option<&'static str>,
    pub expected: &'static str,
}

macro_rules! fixture {
    ($dir:literal, $f:expr) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/", $dir, "/", $f))
    };
}

macro_rules! case {
    ($dir:literal $(, $f:ident)*) => {{
        #[allow(unused_mut)]
        let mut c = Case {
            name: $dir,
            args: fixture!($dir, "args"),
            input: None,
            queries: None,
            updates: None,
            expected: fixture!($dir, "expected"),
        };
        $(c.$f = Some(fixture!($dir, stringify!($f)));)*
        c
    }};
}

pub fn cases() -> Vec<Case> {
    vec![
        case!("cube_query_sum", input, queries),
        case!("cube_query_xor", input, queries),
        case!("cube_batch_update", input, updates),
        case!("rtree_query_sum", input, queries),
        case!("rtree_query_max", input, queries),
        case!("tree_subtree", input, queries),
        case!("stations", input),
        case!("kth_seq", input, queries),
        case!("median", input, queries),
        case!("seqedit", input),
        case!("seqedit_grouped", input),
        case!("rotstack", input),
        case!("rotstack_window", input),
        case!("sweep_kth", input, queries),
        case!("csv_format", input),
    ]
}
