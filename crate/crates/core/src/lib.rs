//! A miniKanren-style relational engine with extensional finite sets and
//! association-list constraints.
//!
//! ```
//! use setkanren::search::constraint;
//! use setkanren::{render_answers, Limit, Op, Query, Relations, Term};
//!
//! let s = Term::set_of(vec![Term::num(1), Term::num(2)]);
//! let q = Query::new(1, |v| constraint(Op::Member, vec![v[0].clone(), s]));
//! let answers = q.run(Limit::All, &Relations::new()).unwrap();
//! assert_eq!(render_answers(&answers), "(1 2)");
//! ```

pub mod constraints;
pub mod frontend;
pub mod oracle;
pub mod reify;
pub mod search;
pub mod state;
pub mod subst;
pub mod term;
pub mod unify;

pub use constraints::Op;
pub use reify::{render_answers, Answer};
pub use search::{Goal, Limit, Query, Relations, SearchError};
pub use state::{Probe, State};
pub use term::{Term, Var};
