//! Reversible compilation of boolean expressions into X/CNOT/Toffoli gate
//! lists acting on `n` input qubits, `m` ancilla (dust) qubits, and one
//! answer qubit.
//!
//! The compiled circuit maps the basis state `|x>|0^m>|0>` to
//! `|x>|z_x>|f(x)>`. Input qubits are only ever used as controls; every
//! gate target is an ancilla or the answer line. Ancillas are left holding
//! whatever the computation produced (no uncomputation).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::oracle::expr::BoolExpr;

/// Default ceiling on ancilla allocation during compilation.
pub const DEFAULT_ANCILLA_CAP: usize = 4096;

/// Elementary reversible gate, 1-based qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevGate {
    X { target: usize },
    Cnot { control: usize, target: usize },
    Toffoli { c1: usize, c2: usize, target: usize },
}

/// Gate list computing `f` into the last qubit of an `n + m + 1` register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleCircuit {
    n: usize,
    m: usize,
    gates: Vec<RevGate>,
}

impl ReversibleCircuit {
    /// Builds a circuit from raw parts, validating that every gate stays in
    /// range and never targets an input qubit.
    pub fn from_parts(n: usize, m: usize, gates: Vec<RevGate>) -> Result<Self> {
        let total = n + m + 1;
        for (gate_index, gate) in gates.iter().enumerate() {
            let (controls, target): (Vec<usize>, usize) = match *gate {
                RevGate::X { target } => (vec![], target),
                RevGate::Cnot { control, target } => (vec![control], target),
                RevGate::Toffoli { c1, c2, target } => {
                    if c1 == c2 {
                        return Err(Error::InvalidGate {
                            gate_index,
                            reason: "duplicate controls",
                        });
                    }
                    (vec![c1, c2], target)
                }
            };
            for q in controls.iter().copied().chain([target]) {
                if q == 0 || q > total {
                    return Err(Error::InvalidGate {
                        gate_index,
                        reason: "qubit outside register",
                    });
                }
            }
            if target <= n {
                return Err(Error::InvalidGate {
                    gate_index,
                    reason: "target on an input qubit",
                });
            }
            if controls.contains(&target) {
                return Err(Error::InvalidGate {
                    gate_index,
                    reason: "control equals target",
                });
            }
        }
        Ok(ReversibleCircuit { n, m, gates })
    }

    pub fn input_qubits(&self) -> usize {
        self.n
    }

    /// Ancilla (dust) qubit count.
    pub fn dust_qubits(&self) -> usize {
        self.m
    }

    pub fn total_qubits(&self) -> usize {
        self.n + self.m + 1
    }

    pub fn gates(&self) -> &[RevGate] {
        &self.gates
    }

    /// Gate count `T(U_f)`.
    pub fn t_uf(&self) -> u64 {
        self.gates.len() as u64
    }

    /// Runs the gate list classically on the basis input `|x>|0^m>|0>` and
    /// returns the full output register, first qubit at index 0.
    pub fn simulate_basis(&self, x: u64) -> Vec<bool> {
        debug_assert!(self.n >= 64 || (x >> self.n) == 0);
        let mut reg = vec![false; self.total_qubits()];
        for (k, bit) in reg.iter_mut().take(self.n).enumerate() {
            *bit = (x >> k) & 1 == 1;
        }
        for gate in &self.gates {
            match *gate {
                RevGate::X { target } => reg[target - 1] = !reg[target - 1],
                RevGate::Cnot { control, target } => {
                    if reg[control - 1] {
                        reg[target - 1] = !reg[target - 1];
                    }
                }
                RevGate::Toffoli { c1, c2, target } => {
                    if reg[c1 - 1] && reg[c2 - 1] {
                        reg[target - 1] = !reg[target - 1];
                    }
                }
            }
        }
        reg
    }

    /// `f(x)` read off the answer qubit of a classical run.
    pub fn eval(&self, x: u64) -> bool {
        self.simulate_basis(x)[self.total_qubits() - 1]
    }
}

/// Compiles `ast` over `n` variables with the default ancilla cap.
pub fn compile_reversible(ast: &BoolExpr, n: usize) -> Result<ReversibleCircuit> {
    compile_reversible_capped(ast, n, DEFAULT_ANCILLA_CAP)
}

/// Compiles `ast`, failing once more than `ancilla_cap` dust lines are needed.
pub fn compile_reversible_capped(
    ast: &BoolExpr,
    n: usize,
    ancilla_cap: usize,
) -> Result<ReversibleCircuit> {
    ast.validate(n)?;
    if ast.max_var() > n {
        return Err(Error::MalformedExpr {
            reason: "variable index outside 1..=n",
        });
    }
    let mut compiler = Compiler {
        gates: Vec::new(),
        ancillas: 0,
        cap: ancilla_cap,
    };
    compiler.xor_into(ast, Line::Answer)?;
    let m = compiler.ancillas;
    let gates = compiler.gates.into_iter().map(|g| g.lower(n, m)).collect();
    ReversibleCircuit::from_parts(n, m, gates)
}

/// Register line before ancilla numbering is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Line {
    Input(usize),
    Ancilla(usize),
    Answer,
}

impl Line {
    fn lower(self, n: usize, m: usize) -> usize {
        match self {
            Line::Input(k) => k,
            Line::Ancilla(j) => n + 1 + j,
            Line::Answer => n + m + 1,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum SymGate {
    X(Line),
    Cnot(Line, Line),
    Toffoli(Line, Line, Line),
}

impl SymGate {
    fn lower(self, n: usize, m: usize) -> RevGate {
        match self {
            SymGate::X(t) => RevGate::X {
                target: t.lower(n, m),
            },
            SymGate::Cnot(c, t) => RevGate::Cnot {
                control: c.lower(n, m),
                target: t.lower(n, m),
            },
            SymGate::Toffoli(c1, c2, t) => RevGate::Toffoli {
                c1: c1.lower(n, m),
                c2: c2.lower(n, m),
                target: t.lower(n, m),
            },
        }
    }
}

struct Compiler {
    gates: Vec<SymGate>,
    ancillas: usize,
    cap: usize,
}

impl Compiler {
    fn fresh(&mut self) -> Result<Line> {
        if self.ancillas >= self.cap {
            return Err(Error::AncillaBudgetExceeded {
                needed: self.ancillas + 1,
                cap: self.cap,
            });
        }
        let line = Line::Ancilla(self.ancillas);
        self.ancillas += 1;
        Ok(line)
    }

    /// XORs the value of `expr` into `target`, which the caller guarantees
    /// is a zeroed writable line (ancilla or answer).
    fn xor_into(&mut self, expr: &BoolExpr, target: Line) -> Result<()> {
        match expr {
            BoolExpr::Var(k) => {
                self.gates.push(SymGate::Cnot(Line::Input(*k), target));
            }
            BoolExpr::Not(e) => {
                self.xor_into(e, target)?;
                self.gates.push(SymGate::X(target));
            }
            BoolExpr::Xor(a, b) => {
                self.xor_into(a, target)?;
                self.xor_into(b, target)?;
            }
            BoolExpr::And(es) => {
                let lines = es
                    .iter()
                    .map(|e| self.value_line(e))
                    .collect::<Result<Vec<_>>>()?;
                self.and_fold(&lines, target)?;
            }
            BoolExpr::Or(es) => {
                // De Morgan: OR = NOT(AND of negated operands).
                let lines = es
                    .iter()
                    .map(|e| self.inverted_line(e))
                    .collect::<Result<Vec<_>>>()?;
                self.and_fold(&lines, target)?;
                self.gates.push(SymGate::X(target));
            }
        }
        Ok(())
    }

    /// Line holding the exact value of `expr`: input qubits are used
    /// directly, anything else lands on a fresh ancilla.
    fn value_line(&mut self, expr: &BoolExpr) -> Result<Line> {
        if let BoolExpr::Var(k) = expr {
            return Ok(Line::Input(*k));
        }
        let line = self.fresh()?;
        self.xor_into(expr, line)?;
        Ok(line)
    }

    /// Fresh ancilla holding the negation of `expr`.
    fn inverted_line(&mut self, expr: &BoolExpr) -> Result<Line> {
        let line = self.fresh()?;
        self.xor_into(expr, line)?;
        self.gates.push(SymGate::X(line));
        Ok(line)
    }

    /// ANDs two or more lines into `target`, chaining through fresh
    /// ancillas for arities above two.
    fn and_fold(&mut self, lines: &[Line], target: Line) -> Result<()> {
        debug_assert!(lines.len() >= 2);
        let mut acc = lines[0];
        for &line in &lines[1..lines.len() - 1] {
            let next = self.fresh()?;
            self.push_and(acc, line, next);
            acc = next;
        }
        self.push_and(acc, lines[lines.len() - 1], target);
        Ok(())
    }

    /// `target ^= a AND b`; coinciding controls degrade to a plain copy
    /// since `x AND x = x` (a Toffoli may not repeat a control line).
    fn push_and(&mut self, a: Line, b: Line, target: Line) {
        if a == b {
            self.gates.push(SymGate::Cnot(a, target));
        } else {
            self.gates.push(SymGate::Toffoli(a, b, target));
        }
    }
}
