//! The three small worked instances.

use graph_core::{parse_instance, Cost};

use crate::{Gadget, GadgetError, GadgetKind, GadgetSpec};

const EXAMPLE_1: &str = "start s t
edge s a 1
edge s d 2
edge a b 3
edge d e 4
edge d b 1
edge c b 4
edge f e 5
edge t c 3
edge t f 1
edge c e 2
edge b e 1
";

/// Example 3 with `M` left open; `{m}` and `{m1}` are substituted.
const EXAMPLE_3: &str = "start s t
edge s v1 0
edge t v6 0
edge t v7 0
edge v7 r 0
edge r v4 0
edge v2 v3 0
edge v3 x1 0
edge x1 x2 0
edge v1 v2 {m}
edge v2 v4 {m}
edge v4 v2 {m}
edge v1 v9 {m1}
edge v9 v4 {m1}
edge v4 v5 2
edge v5 v4 2
edge v5 v6 2
edge v6 v5 2
edge v6 v8 2
edge v8 q 2
edge q p 2
edge p v5 2
";

/// `which` selects the instance; `m` is required for 2 (`M > 2`) and 3 (`M >= 1`).
pub fn gen_example(which: u8, m: Option<&Cost>) -> Result<Gadget, GadgetError> {
    let need = |lower: u64, strict: bool| -> Result<Cost, GadgetError> {
        let m = m.ok_or_else(|| GadgetError::InvalidParameter(format!("example {which} needs M")))?;
        let lo = Cost::from_int(lower);
        if (strict && *m <= lo) || (!strict && *m < lo) {
            let rel = if strict { ">" } else { ">=" };
            return Err(GadgetError::InvalidParameter(format!("example {which} needs M {rel} {lower}")));
        }
        Ok(m.clone())
    };
    let (text, m) = match which {
        1 => (EXAMPLE_1.to_string(), None),
        2 => {
            let m = need(2, true)?;
            (format!("start s t\nedge s v1 2\nedge s v2 1\nedge t v1 1\nedge t v2 {m}\n"), Some(m))
        }
        3 => {
            let m = need(1, false)?;
            let m1 = &m + &Cost::one();
            (EXAMPLE_3.replace("{m1}", &m1.to_string()).replace("{m}", &m.to_string()), Some(m))
        }
        _ => return Err(GadgetError::InvalidParameter(format!("no example {which}"))),
    };
    let graph = parse_instance(&text).expect("built-in example parses");
    let mut spec = GadgetSpec::new(GadgetKind::Example(which));
    if let Some(m) = m {
        spec = spec.param("M", m);
    }
    Ok(Gadget { spec, graph })
}
