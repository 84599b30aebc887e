//! Mutation scripts: a line-oriented text format, its parser, and generators
//! for the odd and even replays.
//!
//! ```text
//! # comment
//! N 7
//! opaque π₂*D(X₂) at 0
//! expand A(1H-1h) at 1
//! exchange 3
//! mutl 4
//! mutr 2
//! serre 10..20
//! through 2 to 0 as 𝒟
//! expect 0..5 = Cell{0,0}, B{0}, S{2}Uv(1H-1h)
//! ```
//!
//! Generators track the collection symbolically, without consulting the
//! oracle; all checking happens when the emitted script is replayed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::collections::{make_block, match_rule, serre_twist_amount, Block, BlockId, Collection, Move, Side};
use crate::error::{Error, Result};
use crate::expr::{parse_block, parse_block_list};
use crate::flagx::EObject;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn big_n(self, n: usize) -> usize {
        match self {
            Parity::Odd => 2 * n + 1,
            Parity::Even => 2 * n,
        }
    }

    pub fn of(big_n: usize) -> Self {
        if big_n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub big_n: usize,
    pub moves: Vec<Move>,
}

fn line_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos: line, msg: format!("line {line}: {}", msg.into()) }
}

fn parse_range(s: &str, line: usize) -> Result<(usize, usize)> {
    let (a, b) = s.trim().split_once("..").ok_or_else(|| line_err(line, "expected a range i..j"))?;
    let a = a.trim().parse().map_err(|_| line_err(line, "bad range start"))?;
    let b = b.trim().parse().map_err(|_| line_err(line, "bad range end"))?;
    Ok((a, b))
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.trim().parse().map_err(|_| line_err(line, format!("bad index '{}'", s.trim())))
}

pub fn parse_script(text: &str) -> Result<Script> {
    let mut big_n = None;
    let mut moves = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (cmd, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        let relocate = |e: Error| match e {
            Error::Parse { msg, .. } => line_err(line, msg),
            other => other,
        };
        let mv = match cmd {
            "N" => {
                big_n = Some(parse_index(rest, line)?);
                continue;
            }
            "exchange" => Move::Exchange(parse_index(rest, line)?),
            "mutl" => Move::MutL(parse_index(rest, line)?),
            "mutr" => Move::MutR(parse_index(rest, line)?),
            "serre" => {
                let (start, end) = parse_range(rest, line)?;
                Move::Serre { start, end }
            }
            "expand" => {
                let (b, at) = rest.rsplit_once(" at ").ok_or_else(|| line_err(line, "expected 'expand BLOCK at i'"))?;
                Move::Expand { block: parse_block(b).map_err(relocate)?, at: parse_index(at, line)? }
            }
            "opaque" => {
                let (name, at) = rest.rsplit_once(" at ").ok_or_else(|| line_err(line, "expected 'opaque NAME at i'"))?;
                Move::Opaque { name: name.trim().to_string(), at: parse_index(at, line)? }
            }
            "through" => {
                let (from, rest) = rest.split_once(" to ").ok_or_else(|| line_err(line, "expected 'through i to j as NAME'"))?;
                let (to, name) = rest.split_once(" as ").ok_or_else(|| line_err(line, "expected 'as NAME'"))?;
                Move::Through { from: parse_index(from, line)?, to: parse_index(to, line)?, name: name.trim().to_string() }
            }
            "expect" => {
                let (range, list) = rest.split_once('=').ok_or_else(|| line_err(line, "expected 'expect i..j = BLOCKS'"))?;
                let (start, end) = parse_range(range, line)?;
                Move::Expect { start, end, blocks: parse_block_list(list).map_err(relocate)? }
            }
            other => return Err(line_err(line, format!("unknown command '{other}'"))),
        };
        moves.push(mv);
    }
    let big_n = big_n.ok_or_else(|| line_err(0, "missing 'N <int>' line"))?;
    Ok(Script { big_n, moves })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveFailure {
    pub index: usize,
    pub mv: String,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct ReplayOutcome {
    /// State after the last successful move.
    pub collection: Collection,
    pub failure: Option<(usize, Move, Error)>,
    pub moves_applied: usize,
    /// Object count right after the last setup move (`expand`/`opaque`).
    pub setup_count: usize,
    /// True when only setup moves changed the object count.
    pub count_conserved: bool,
}

impl ReplayOutcome {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs a script, stopping at the first move whose precondition fails.
pub fn run_script(script: &Script, strict: bool) -> Result<ReplayOutcome> {
    let mut c = Collection::new(script.big_n)?.with_strict(strict);
    let mut setup_count = 0;
    let mut conserved = true;
    for (i, mv) in script.moves.iter().enumerate() {
        let before = c.count_objects();
        match c.apply(mv) {
            Ok(next) => c = next,
            Err(e) => {
                return Ok(ReplayOutcome {
                    collection: c,
                    failure: Some((i, mv.clone(), e)),
                    moves_applied: i,
                    setup_count,
                    count_conserved: conserved,
                })
            }
        }
        match mv {
            Move::Expand { .. } | Move::Opaque { .. } => setup_count = c.count_objects(),
            _ => conserved &= c.count_objects() == before,
        }
    }
    Ok(ReplayOutcome { collection: c, failure: None, moves_applied: script.moves.len(), setup_count, count_conserved: conserved })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Item {
    Obj(EObject),
    Opaque(String),
}

/// Symbolic collection that emits script lines as it is rewritten.
pub struct Builder {
    big_n: usize,
    n: i64,
    items: Vec<Item>,
    lines: Vec<String>,
}

impl Builder {
    pub fn new(big_n: usize, title: &str) -> Self {
        Self {
            big_n,
            n: (big_n / 2) as i64,
            items: Vec::new(),
            lines: vec![format!("# {title}"), format!("N {big_n}")],
        }
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn objects(&self) -> Vec<EObject> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Obj(o) => Some(o.clone()),
                Item::Opaque(_) => None,
            })
            .collect()
    }

    pub fn comment(&mut self, s: &str) {
        self.lines.push(format!("# {s}"));
    }

    fn objs(&self, b: Block) -> Vec<EObject> {
        b.objects(self.big_n).expect("generator requested a block outside its range")
    }

    pub fn opaque(&mut self, name: &str, at: usize) {
        self.items.insert(at, Item::Opaque(name.to_string()));
        self.lines.push(format!("opaque {name} at {at}"));
    }

    pub fn push(&mut self, b: Block) {
        let at = self.items.len();
        let objs = self.objs(b);
        self.items.extend(objs.into_iter().map(Item::Obj));
        self.lines.push(format!("expand {} at {at}", b.to_script()));
    }

    pub fn pos(&self, o: &EObject) -> usize {
        let hits: Vec<usize> = self
            .items
            .iter()
            .enumerate()
            .filter(|(_, it)| **it == Item::Obj(o.clone()))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(hits.len(), 1, "object {o} occurs {} times in the generator state", hits.len());
        hits[0]
    }

    pub fn exchange(&mut self, i: usize) {
        self.items.swap(i, i + 1);
        self.lines.push(format!("exchange {i}"));
    }

    /// Moves the entry at `from` to index `to` by adjacent exchanges.
    pub fn move_to(&mut self, from: usize, to: usize) {
        if from < to {
            for i in from..to {
                self.exchange(i);
            }
        } else {
            for i in (to..from).rev() {
                self.exchange(i);
            }
        }
    }

    pub fn move_right(&mut self, o: &EObject, steps: usize) {
        let p = self.pos(o);
        self.move_to(p, p + steps);
    }

    pub fn move_left(&mut self, o: &EObject, steps: usize) {
        let p = self.pos(o);
        self.move_to(p, p - steps);
    }

    fn mutate(&mut self, side: Side, i: usize) {
        let (Item::Obj(x), Item::Obj(y)) = (&self.items[i], &self.items[i + 1]) else {
            panic!("mutation on opaque entry");
        };
        let (_, r) = match_rule(side, x, y).unwrap_or_else(|| panic!("no rule for ({x}, {y})"));
        let (a, b) = match side {
            Side::Left => (r, x.clone()),
            Side::Right => (y.clone(), r),
        };
        self.items[i] = Item::Obj(a);
        self.items[i + 1] = Item::Obj(b);
        let cmd = if side == Side::Left { "mutl" } else { "mutr" };
        self.lines.push(format!("{cmd} {i}"));
    }

    /// `⟨E, F⟩ ↦ ⟨L_E F, E⟩` where `E = o`.
    pub fn mutl(&mut self, o: &EObject) {
        let p = self.pos(o);
        self.mutate(Side::Left, p);
    }

    /// `⟨b, E⟩ ↦ ⟨E, R_E b⟩` where `b = o`.
    pub fn mutr(&mut self, o: &EObject) {
        let p = self.pos(o);
        self.mutate(Side::Right, p);
    }

    pub fn serre_tail(&mut self, start: usize) {
        let end = self.items.len();
        let (big, small) = serre_twist_amount(self.big_n);
        let tail: Vec<Item> = self
            .items
            .drain(start..)
            .map(|it| match it {
                Item::Obj(o) => Item::Obj(o.twist(big, small)),
                Item::Opaque(_) => panic!("serre over opaque entry"),
            })
            .collect();
        self.items.splice(0..0, tail);
        self.lines.push(format!("serre {start}..{end}"));
    }

    pub fn through(&mut self, from: usize, to: usize, name: &str) {
        let it = self.items.remove(from);
        assert!(matches!(it, Item::Opaque(_)));
        self.items.insert(to, Item::Opaque(name.to_string()));
        self.lines.push(format!("through {from} to {to} as {name}"));
    }

    /// Emit an expectation that `blocks` occupy the collection starting at `start`.
    pub fn expect_at(&mut self, start: usize, blocks: &[Block]) {
        let mut objs = Vec::new();
        for b in blocks {
            objs.extend(self.objs(*b));
        }
        let end = start + objs.len();
        let have: Vec<Item> = self.items[start..end].to_vec();
        let want: Vec<Item> = objs.into_iter().map(Item::Obj).collect();
        assert_eq!(have, want, "generator state disagrees with expectation at {start}");
        let names: Vec<String> = blocks.iter().map(|b| b.to_script()).collect();
        self.lines.push(format!("expect {start}..{end} = {}", names.join(", ")));
    }

    /// Expectation anchored at the first object of the first nonempty block.
    pub fn expect(&mut self, blocks: &[Block]) {
        let first = blocks.iter().flat_map(|b| self.objs(*b)).next();
        if let Some(o) = first {
            let p = self.pos(&o);
            self.expect_at(p, blocks);
        }
    }

    /// Permute `start..start+target.len()` into `target` using adjacent exchanges.
    pub fn reorder(&mut self, start: usize, target: &[EObject]) {
        for (k, o) in target.iter().enumerate() {
            let p = self.pos(o);
            assert!(p >= start + k, "reorder target {o} already passed");
            self.move_to(p, start + k);
        }
    }
}

fn sym(k: i64, big: i64, small: i64) -> EObject {
    EObject::sym(k as u32, big, small)
}

fn line(small: i64, big: i64) -> EObject {
    EObject::line(small, big)
}

fn blk(id: BlockId) -> Block {
    Block::new(id)
}

fn tw(id: BlockId, big: i64, small: i64) -> Block {
    Block::tw(id, big, small)
}

fn cell(small: i64) -> Block {
    blk(BlockId::Cell(small, 0))
}

fn u(x: i64) -> u32 {
    x as u32
}

/// `⟨𝒜(H-h), 𝒜⟩ → ⟨O, ℬ_0..ℬ_{n-2}, S^{n-1}U∨(H-h)⟩`; with `top = 1` the blocks
/// are `𝒜^1` and the trailing `S^{n-1}U∨(H-h)` is absent.
fn first_step(b: &mut Builder, top: i64) {
    let n = b.n;
    if top == 0 {
        b.comment("base case: exchange S^{n-1}U∨(H-h) and 𝒜");
        b.move_right(&sym(n - 1, 1, -1), n as usize);
        b.expect(&[tw(BlockId::AUp(1), 1, -1), blk(BlockId::A), blk(BlockId::Sym(u(n - 1))).twisted(1, -1)]);
    }
    for k in 1..n {
        b.comment(&format!("stage k={k}"));
        let x = sym(n - k - 1, 1, -1);
        b.move_right(&x, (n - k) as usize);
        b.mutl(&x);
        let mut exp = vec![tw(BlockId::AUp(u(k + 1)), 1, -1), blk(BlockId::AUp(u(k)))];
        exp.extend((n - k - 1..=n - 2).map(|l| blk(BlockId::B(u(l)))));
        if top == 0 {
            exp.push(tw(BlockId::Sym(u(n - 1)), 1, -1));
        }
        b.expect(&exp);
    }
}

/// `⟨𝒜^t_1(-h), O, ℬ…⟩` toward `⟨𝒞_0, …, 𝒜^{t+2}(H-h), ℬ…⟩`; `t` is 0 (odd) or 1 (even).
fn second_step(b: &mut Builder, t: i64) {
    let n = b.n;
    let last = n - 1 - t;
    if last < 1 {
        return;
    }
    b.comment("base case: exchange O and the rest of 𝒜_1(-h), then mutate U∨(-h) through O");
    let o = line(0, 0);
    b.move_left(&o, (last - 1) as usize);
    b.mutr(&sym(1, 0, -1));
    for k in 1..last {
        b.comment(&format!("stage k={k}"));
        let okh = line(k, 0);
        // past 𝒜^{n-k+1}(H-h) = ⟨O, …, S^{k-2}U∨⟩(H-h)
        b.move_left(&okh, (k - 1) as usize);
        // past 𝒜_{k+2}(-h)
        b.move_left(&okh, (last - k - 1) as usize);
        b.mutr(&sym(k + 1, 0, -1));
        let mut exp: Vec<Block> = (0..=k).map(|l| blk(BlockId::C(u(l)))).collect();
        let low = if t == 0 { BlockId::ALow(u(k + 2)) } else { BlockId::AUpLow(1, u(k + 2)) };
        exp.push(tw(low, 0, -1));
        exp.push(tw(BlockId::AUp(u(n - k)), 1, -1));
        b.expect(&exp);
    }
}

/// `⟨𝒞_1..𝒞_m, 𝒜^{t+2}(H-h)⟩ → ⟨ℰ_1..ℰ_m⟩` with `m = n-2-t`.
fn third_step(b: &mut Builder, t: i64) {
    let n = b.n;
    let m = n - 2 - t;
    for k in 1..=m {
        b.comment(&format!("stage k={k}"));
        let x = sym(k - 1, 1, -1);
        // past 𝒞_{k+1}..𝒞_m
        b.move_left(&x, (2 * (m - k)) as usize);
        b.mutr(&sym(k, 1, -2));
        let mut exp: Vec<Block> = (1..=k).map(|l| blk(BlockId::E(u(l)))).collect();
        exp.extend((k + 1..=m).map(|l| blk(BlockId::C(u(l)))));
        exp.push(tw(BlockId::AUpLow(u(t + 2), u(k)), 1, -1));
        b.expect(&exp);
    }
}

/// `⟨S^{j}U∨(H-h), 𝒜^{u}(H), S^{j-1}U∨(H)⟩ → ⟨𝒜^{u}(H), S^{j-1}U∨(H), O((j+1)(H-h))⟩`
fn pass_and_mutate(b: &mut Builder, j: i64, skip: usize) {
    let x = sym(j, 1, -1);
    b.move_right(&x, skip);
    b.mutr(&x);
}

/// Folds `⟨S^{j-1}U∨(H-h), O((j+1)(H-h)-h)⟩` into `ℱ_{j-2}` after moving it past `skip` entries.
fn fold_e_tail(b: &mut Builder, j: i64, skip: usize) {
    let x = sym(j - 1, 1, -1);
    let y = line(-(j + 1) - 1, j + 1);
    b.move_right(&y, skip);
    b.move_right(&x, skip);
    // swap O((j+1)(H-h)-h) with S^{j-2}U∨(H)
    let p = b.pos(&y);
    b.exchange(p);
    b.mutr(&x);
}

fn odd_step4(b: &mut Builder) {
    let n = b.n;
    b.comment("base case k=1");
    pass_and_mutate(b, n - 2, (n - 3) as usize);
    let mut exp: Vec<Block> = (1..=n - 2).map(|l| blk(BlockId::E(u(l)))).collect();
    exp.push(cell(n - 1));
    exp.push(tw(BlockId::AUp(3), 1, 0));
    exp.push(blk(BlockId::F(u(n - 3))));
    b.expect(&exp);
    for k in 1..=n - 3 {
        b.comment(&format!("stage k={k}"));
        let j = n - 1 - k;
        // past ⟨O(ℓh)⟩_{n-k≤ℓ≤n-1} and 𝒜^{k+3}(H)
        let skip = (k + (n - k - 3)) as usize;
        fold_e_tail(b, j, skip);
        let mut exp: Vec<Block> = (1..=n - 2 - k).map(|l| blk(BlockId::E(u(l)))).collect();
        exp.extend((n - 1 - k..=n - 1).map(cell));
        exp.push(tw(BlockId::AUp(u(k + 3)), 1, 0));
        exp.extend((n - 3 - k..=n - 3).map(|l| blk(BlockId::F(u(l)))));
        b.expect(&exp);
    }
}

fn last_of_third(b: &mut Builder) {
    let n = b.n;
    b.comment("exchange S^{n-1}U∨(H-h) and 𝒜^2(H), then mutate through S^{n-2}U∨(H)");
    pass_and_mutate(b, n - 1, (n - 2) as usize);
    b.expect(&[tw(BlockId::AUp(2), 1, 0), blk(BlockId::F(u(n - 2)))]);
}

/// Target order `⟨O(ℓh)⟩_{-1..n-1}, ℋ-type block` for the line bundles produced by the steps.
fn reorder_lines(b: &mut Builder, head: BlockId) {
    let n = b.n;
    let mut target: Vec<EObject> = (-1..=n - 1).map(|l| line(l, 0)).collect();
    target.extend(make_block(head, b.big_n).expect("block in range"));
    let start = b.pos(&line(-1, 0));
    b.reorder(start, &target);
}

/// Odd `N = 2n+1`, steps of the replay by name.
pub fn odd_lemma(step: &str, n: usize) -> Result<String> {
    let big_n = 2 * n + 1;
    let ni = n as i64;
    let need = |ok: bool| if ok { Ok(()) } else { Err(Error::OutOfRange(format!("odd {step} needs a larger n (got {n})"))) };
    need(n >= 2)?;
    let mut b = Builder::new(big_n, &format!("odd N={big_n}: {step}"));
    match step {
        "step1" => {
            b.push(tw(BlockId::A, 1, -1));
            b.push(blk(BlockId::A));
            first_step(&mut b, 0);
            let mut exp = vec![cell(0)];
            exp.extend((0..=ni - 2).map(|l| blk(BlockId::B(u(l)))));
            exp.push(tw(BlockId::Sym(u(ni - 1)), 1, -1));
            b.expect_at(0, &exp);
        }
        "step2" => {
            b.push(tw(BlockId::ALow(1), 0, -1));
            b.push(cell(0));
            for l in 0..=ni - 2 {
                b.push(blk(BlockId::B(u(l))));
            }
            second_step(&mut b, 0);
            let mut exp: Vec<Block> = (0..=ni - 2).map(|l| blk(BlockId::C(u(l)))).collect();
            exp.push(tw(BlockId::AUp(2), 1, -1));
            exp.push(blk(BlockId::B(u(ni - 2))));
            b.expect_at(0, &exp);
        }
        "step3" => {
            need(n >= 3)?;
            for l in 1..=ni - 2 {
                b.push(blk(BlockId::C(u(l))));
            }
            b.push(tw(BlockId::AUp(2), 1, -1));
            third_step(&mut b, 0);
            let exp: Vec<Block> = (1..=ni - 2).map(|l| blk(BlockId::E(u(l)))).collect();
            b.expect_at(0, &exp);
        }
        "step3-last" => {
            b.push(tw(BlockId::Sym(u(ni - 1)), 1, -1));
            b.push(tw(BlockId::AUp(1), 1, 0));
            last_of_third(&mut b);
        }
        "step4" => {
            need(n >= 3)?;
            for l in 1..=ni - 2 {
                b.push(blk(BlockId::E(u(l))));
            }
            b.push(blk(BlockId::B(u(ni - 2))));
            b.push(tw(BlockId::AUp(2), 1, 0));
            odd_step4(&mut b);
            let mut exp = vec![blk(BlockId::E(1))];
            exp.extend((2..=ni - 1).map(cell));
            exp.extend((0..=ni - 3).map(|l| blk(BlockId::F(u(l)))));
            b.expect_at(0, &exp);
        }
        "sod" => odd_sod(&mut b),
        "sec4" => odd_sec4(&mut b),
        other => return Err(Error::OutOfRange(format!("unknown odd step '{other}'"))),
    }
    Ok(b.text())
}

/// `⟨𝒟, ⟨O(ℓh)⟩_{-1..n-1}, ℋ, ⟨ℱ_ℓ⟩_{0..n-2}, S^{n-1}U∨(H), ⟨𝒜(ℓH)⟩_{2..2n-2}⟩` after `𝒟`.
pub fn sod1mut_blocks(n: i64) -> Vec<Block> {
    let mut v: Vec<Block> = (-1..=n - 1).map(cell).collect();
    v.push(blk(BlockId::H));
    v.extend((0..=n - 2).map(|l| blk(BlockId::F(u(l)))));
    v.push(tw(BlockId::Sym(u(n - 1)), 1, 0));
    v.extend((2..=2 * n - 2).map(|l| tw(BlockId::A, l, 0)));
    v
}

fn odd_sod(b: &mut Builder) {
    let n = b.n;
    b.comment("start: π₂*D(X₂) followed by the Grassmannian collection ⟨𝒜(kH)⟩_{0≤k≤2n}");
    b.opaque("π₂*D(X₂)", 0);
    for k in 0..=2 * n {
        b.push(tw(BlockId::A, k, 0));
    }
    b.comment("move ⟨𝒜((2n-1)H), 𝒜(2nH)⟩ to the far left, twisted by K_X|_E");
    b.serre_tail(1 + (2 * n - 1) as usize * n as usize);
    b.through(2 * n as usize, 0, "𝒟");
    let mut exp = vec![tw(BlockId::A, 0, -1), tw(BlockId::A, 1, -1)];
    exp.extend((0..=2 * n - 2).map(|k| tw(BlockId::A, k, 0)));
    b.expect_at(1, &exp);

    b.comment("first step");
    first_step(b, 0);
    b.comment("second step");
    second_step(b, 0);
    if n >= 3 {
        b.comment("third step");
        third_step(b, 0);
    }
    b.comment("end of third step");
    last_of_third(b);
    if n >= 3 {
        b.comment("fourth step");
        odd_step4(b);
    }
    b.comment("reorganize the line bundles");
    reorder_lines(b, BlockId::H);
    b.expect_at(1, &sod1mut_blocks(n));
}

fn odd_sec4(b: &mut Builder) {
    let n = b.n;
    let r = (n - 1) / 2;
    b.opaque("𝒟", 0);
    for blk in sod1mut_blocks(n) {
        b.push(blk);
    }
    b.comment("split 𝒜((n+ℓ)H) = ⟨𝒜^{2ℓ+1}, 𝒜_{n-2ℓ-1}⟩ and move the 𝒜^{2ℓ+1} parts to the left");
    let first = b.pos(&sym(0, n, 0));
    let mut target = Vec::new();
    for l in 0..=r {
        target.extend((0..=n - 2 * l - 2).map(|a| sym(a, n + l, 0)));
    }
    b.reorder(first, &target);
    let tail_start = first + target.len();
    b.comment("move the tail to the far left, then 𝒟 through it");
    let tail_len = b.len() - tail_start;
    b.serre_tail(tail_start);
    b.through(tail_len, 0, "𝒟₂");
    let mut exp = sec4_group1(n);
    exp.extend(sec4_group2(n));
    b.expect_at(1, &exp);
}

/// Group (1) of `⊥𝒟₂`.
pub fn sec4_group1(n: i64) -> Vec<Block> {
    let r = (n - 1) / 2;
    let mut v: Vec<Block> = (0..=r).map(|l| tw(BlockId::ALow(u(n - 2 * l - 1)), -n + 1 + l, -1)).collect();
    v.extend((n + 1 + r..=2 * n - 2).map(|l| tw(BlockId::A, l - 2 * n + 1, -1)));
    v
}

/// Group (2) of `⊥𝒟₂`.
pub fn sec4_group2(n: i64) -> Vec<Block> {
    let r = (n - 1) / 2;
    let mut v: Vec<Block> = (-1..=n - 1).map(cell).collect();
    v.push(blk(BlockId::H));
    v.extend((0..=n - 2).map(|l| blk(BlockId::F(u(l)))));
    v.push(tw(BlockId::Sym(u(n - 1)), 1, 0));
    v.extend((2..=n - 1).map(|k| tw(BlockId::A, k, 0)));
    v.extend((0..=r).map(|l| tw(BlockId::AUp(u(2 * l + 1)), n + l, 0)));
    v
}

/// Outcome of the even second step after the opaque entry.
pub fn even_step2_blocks(n: i64) -> Vec<Block> {
    let mut v: Vec<Block> = (-1..=n - 1).map(cell).collect();
    v.push(blk(BlockId::HPrime));
    v.extend((0..=n - 3).map(|l| blk(BlockId::FPrime(u(l)))));
    v.push(tw(BlockId::Sym(u(n - 2)), 1, 0));
    v.push(tw(BlockId::Sym(u(n - 1)), 1, 0));
    v
}

fn even_second(b: &mut Builder) {
    let n = b.n;
    b.comment("⟨𝒜^1(H-h), 𝒜⟩ → ⟨O, ℬ_0..ℬ_{n-2}⟩");
    first_step(b, 1);
    b.comment("⟨𝒜^1_1(-h), O, ℬ…⟩");
    second_step(b, 1);
    if n >= 4 {
        b.comment("⟨𝒞_1..𝒞_{n-3}, 𝒜^3(H-h)⟩ → ⟨ℰ_1..ℰ_{n-3}⟩");
        third_step(b, 1);
    }
    if n >= 3 {
        b.comment("ℬ_{n-2}: S^{n-2}U∨(H-h) past 𝒜^3(H), then through S^{n-3}U∨(H)");
        pass_and_mutate(b, n - 2, (n - 3) as usize);
    }
    if n >= 4 {
        b.comment("ℬ_{n-3}: S^{n-3}U∨(H-h) past O((n-1)h) and 𝒜^4(H), then through S^{n-4}U∨(H)");
        pass_and_mutate(b, n - 3, (1 + n - 4) as usize);
    }
    for j in (2..=n - 3).rev() {
        b.comment(&format!("ℰ_{j} → ℱ′_{}", j - 2));
        // past O((j+1)h)..O((n-1)h) and 𝒜^{n-j+2}(H)
        let skip = ((n - 1 - j) + (j - 2)) as usize;
        fold_e_tail(b, j, skip);
    }
    b.comment("reorganize the line bundles");
    reorder_lines(b, BlockId::HPrime);
}

/// Even `N = 2n`.
pub fn even_lemma(step: &str, n: usize) -> Result<String> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("even {step} needs n ≥ 2 (got {n})")));
    }
    let big_n = 2 * n;
    let ni = n as i64;
    let mut b = Builder::new(big_n, &format!("even N={big_n}: {step}"));
    match step {
        "step1" => {
            even_first(&mut b);
        }
        "step2" => {
            b.push(tw(BlockId::AUp(1), 0, -1));
            b.push(tw(BlockId::AUp(1), 1, -1));
            b.push(blk(BlockId::A));
            b.push(tw(BlockId::A, 1, 0));
            even_second(&mut b);
            b.expect_at(0, &even_step2_blocks(ni));
        }
        "sod" => {
            even_first(&mut b);
            b.comment("second step");
            even_second(&mut b);
            let mut exp = even_step2_blocks(ni);
            exp.extend((2..=ni - 1).map(|k| tw(BlockId::A, k, 0)));
            exp.extend((ni..=2 * ni - 3).map(|k| tw(BlockId::AUp(1), k, 0)));
            b.expect_at(1, &exp);
            b.comment("third step");
            even_third(&mut b);
        }
        other => return Err(Error::OutOfRange(format!("unknown even step '{other}'"))),
    }
    Ok(b.text())
}

fn even_first(b: &mut Builder) {
    let n = b.n;
    b.comment("start: π₂*D(X₂), ⟨𝒜(kH)⟩_{0≤k≤n-1}, ⟨𝒜^1(kH)⟩_{n≤k≤2n-1}");
    b.opaque("π₂*D(X₂)", 0);
    for k in 0..n {
        b.push(tw(BlockId::A, k, 0));
    }
    for k in n..2 * n {
        b.push(tw(BlockId::AUp(1), k, 0));
    }
    let tail = b.len() - 2 * (n - 1) as usize;
    b.serre_tail(tail);
    b.through(2 * (n - 1) as usize, 0, "𝒟′");
    let mut exp = vec![tw(BlockId::AUp(1), 0, -1), tw(BlockId::AUp(1), 1, -1)];
    exp.extend((0..=n - 1).map(|k| tw(BlockId::A, k, 0)));
    exp.extend((n..=2 * n - 3).map(|k| tw(BlockId::AUp(1), k, 0)));
    b.expect_at(1, &exp);
}

/// Residual blocks `𝒜^{2ℓ+3}((n+ℓ)H)` for `-1 ≤ ℓ ≤ r′`.
pub fn even_residuals(n: i64) -> Vec<Block> {
    let rp = (n - 1) / 2 - 1;
    (-1..=rp).map(|l| tw(BlockId::AUp(u(2 * l + 3)), n + l, 0)).collect()
}

/// Blocks moved to the far left in the even third step, after twisting.
pub fn even_moved(n: i64) -> Vec<Block> {
    let rp = (n - 1) / 2 - 1;
    let mut v = vec![tw(BlockId::Sym(u(n - 1)), 1 - n, -1)];
    v.extend((0..=rp).map(|l| tw(BlockId::AUpLow(1, u(n - 2 * l - 3)), l - n + 2, -1)));
    v.extend((n + rp + 1..=2 * n - 3).map(|k| tw(BlockId::AUp(1), k - 2 * n + 2, -1)));
    v
}

fn even_third(b: &mut Builder) {
    let n = b.n;
    let first = b.pos(&sym(0, n - 1, 0));
    let mut target: Vec<EObject> = Vec::new();
    for blk in even_residuals(n) {
        target.extend(blk.objects(b.big_n).expect("block in range"));
    }
    b.comment("move the residual 𝒜^{2ℓ+3}((n+ℓ)H) parts to the left");
    b.reorder(first, &target);
    let tail_start = first + target.len();
    let tail_len = b.len() - tail_start;
    b.comment("move S^{n-1}U∨((n-1)H) and the remaining tail to the far left");
    b.serre_tail(tail_start);
    b.through(tail_len, 0, "𝒟′₂");
    let mut exp = even_moved(n);
    if n == 2 {
        exp.extend((-1..=1).map(cell));
        exp.push(blk(BlockId::HPrime));
    } else {
        exp.extend(even_step2_blocks(n));
        exp.extend((2..=n - 2).map(|k| tw(BlockId::A, k, 0)));
    }
    exp.extend(even_residuals(n));
    b.expect_at(1, &exp);
}

/// Every shipped script as `(relative path, generator output)`.
pub fn shipped(n_min: usize, n_max: usize) -> Vec<(String, Result<String>)> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        for step in ["step1", "step2", "step3", "step3-last", "step4", "sod", "sec4"] {
            if n < 3 && (step == "step3" || step == "step4") {
                continue;
            }
            out.push((format!("odd/{step}/n{n}.fcs"), odd_lemma(step, n)));
        }
        for step in ["step1", "step2", "sod"] {
            out.push((format!("even/{step}/n{n}.fcs"), even_lemma(step, n)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip_of_moves() {
        let text = "# t\nN 5\nopaque π₂*D(X₂) at 0\nexpand A^{1}(1H-1h) at 1\nexchange 1\nmutl 0\nmutr 2\nserre 3..5\nthrough 2 to 0 as 𝒟\nexpect 0..2 = Cell{0,0}, B{0}\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.big_n, 5);
        assert_eq!(s.moves.len(), 8);
        let printed: Vec<String> = s.moves.iter().map(|m| m.to_string()).collect();
        assert_eq!(printed[1], "expand A^{1}(1H-1h) at 1");
        assert_eq!(printed[7], "expect 0..2 = Cell{0,0}, B{0}");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_script("exchange 1\n"), Err(Error::Parse { .. })));
        match parse_script("N 5\nfrobnicate 2\n") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_script_is_identity() {
        let s = parse_script("N 7\n").unwrap();
        let out = run_script(&s, false).unwrap();
        assert!(out.ok());
        assert!(out.collection.is_empty());
    }

    #[test]
    fn generators_cover_small_n() {
        for n in 2..7 {
            for (path, text) in shipped(n, n) {
                let text = text.unwrap_or_else(|e| panic!("{path}: {e}"));
                parse_script(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
            }
        }
    }

    #[test]
    fn generated_scripts_replay() {
        for (path, text) in shipped(2, 4) {
            let script = parse_script(&text.unwrap()).unwrap();
            let out = run_script(&script, false).unwrap();
            if let Some((i, mv, e)) = &out.failure {
                panic!("{path}: move {i} '{mv}' failed: {e}\nstate {}", out.collection);
            }
            assert!(out.count_conserved, "{path}");
        }
    }
}
