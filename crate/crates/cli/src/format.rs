//! The `bondcat/1` JSON documents: reading with JSON-pointer diagnostics,
//! conversion to and from library values, and rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::de::{DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use bondcat::category::{BlockMatrix, BondMorphism, BondObject, DimensionVector};
use bondcat::complexes::{ChainMap, HomotopyWitness, Multiplicities, PathBlocks, ProjComplex};
use bondcat::cones::Triangle;
use bondcat::equiv::{KMatrixWitness, Variant};
use bondcat::functor::Placed;
use bondcat::gentle::{GentleAlgebra, Path, Quiver};
use bondcat::poset::{BasePoset, GradedElement};
use bondcat::scalar::{DenseMatrix, Field, Scalar};
use bondcat::Error;

use crate::error::CliError;

pub const FORMAT: &str = "bondcat/1";
pub const FIELD_VAR: &str = "BONDCAT_FIELD";

type Result<T> = std::result::Result<T, CliError>;

/// A scalar as written in a file: a JSON integer or a string `n`, `n/d`,
/// `n mod p`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

/// A JSON object whose key order is kept, with duplicate keys rejected.
#[derive(Clone, Debug)]
pub struct Ordered<V>(pub Vec<(String, V)>);

impl<V> Default for Ordered<V> {
    fn default() -> Self {
        Ordered(Vec::new())
    }
}

impl<V: Serialize> Serialize for Ordered<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for Ordered<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visit<V>(std::marker::PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for Visit<V> {
            type Value = Ordered<V>;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a JSON object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Ordered<V>, A::Error> {
                let mut out: Vec<(String, V)> = Vec::new();
                while let Some(k) = map.next_key::<String>()? {
                    if out.iter().any(|(seen, _)| *seen == k) {
                        return Err(serde::de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    let v = map.next_value()?;
                    out.push((k, v));
                }
                Ok(Ordered(out))
            }
        }
        d.deserialize_map(Visit(std::marker::PhantomData))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub names: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub row: (String, i64),
    pub col: (String, i64),
    pub entries: Vec<Vec<Num>>,
}

/// Bands and blocks of an object inside a morphism document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyDoc {
    pub dims: Vec<(String, i64, usize)>,
    #[serde(default)]
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacedDoc {
    pub path: String,
    pub degree: i64,
    pub row: (String, i64),
    pub col: (String, i64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub poset: PosetDoc,
    pub dims: Vec<(String, i64, usize)>,
    #[serde(default)]
    pub blocks: Vec<BlockDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<Vec<PlacedDoc>>,
}

/// Morphisms and witnesses; `variant` is present exactly for witnesses.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub poset: PosetDoc,
    pub source: BodyDoc,
    pub target: BodyDoc,
    #[serde(default)]
    pub blocks: Vec<BlockDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<Vec<PlacedDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximal_order: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathBlockDoc {
    pub path: String,
    pub matrix: Vec<Vec<Num>>,
}

/// Degrees and differentials of a complex inside a chain-map document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexBody {
    pub degrees: Ordered<Ordered<usize>>,
    #[serde(default)]
    pub differentials: Ordered<Vec<PathBlockDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// A quiver document, or a path to one relative to this file.
    pub algebra: Value,
    pub degrees: Ordered<Ordered<usize>>,
    #[serde(default)]
    pub differentials: Ordered<Vec<PathBlockDoc>>,
}

/// Chain maps (`kind: chainmap`, `maps` in degree `j` go `Pʲ → P̃ʲ`) and
/// homotopies (`kind: homotopy`, `Pʲ → P̃ʲ⁻¹`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub algebra: Value,
    pub source: ComplexBody,
    pub target: ComplexBody,
    #[serde(default)]
    pub maps: Ordered<Vec<PathBlockDoc>>,
}

/// Pointer segment with `~` and `/` escaped.
fn seg(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

fn join(ptr: &str, s: impl std::fmt::Display) -> String {
    format!("{ptr}/{}", seg(&s.to_string()))
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct Source {
    pub name: String,
    pub dir: PathBuf,
    pub value: Value,
}

impl Source {
    pub fn read(path: &FsPath) -> Result<Source> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed { file: name.clone(), pointer: String::new(), message: e.to_string() })?;
        Source::parse(&name, path.parent().unwrap_or(FsPath::new(".")), &text)
    }

    pub fn parse(name: &str, dir: &FsPath, text: &str) -> Result<Source> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Malformed {
            file: name.to_string(),
            pointer: String::new(),
            message: format!("not JSON: {e}"),
        })?;
        Ok(Source { name: name.to_string(), dir: dir.to_path_buf(), value })
    }

    pub fn malformed(&self, pointer: impl Into<String>, message: impl std::fmt::Display) -> CliError {
        CliError::Malformed { file: self.name.clone(), pointer: pointer.into(), message: message.to_string() }
    }

    /// Library errors raised while building a value from this file: naming
    /// and parsing problems are malformed input, the rest are invalid data.
    fn core(&self, pointer: &str, e: Error) -> CliError {
        match e {
            Error::Parse(_)
            | Error::Duplicate(_)
            | Error::Unknown(_)
            | Error::NotPrime(_)
            | Error::NotInvolution(_)
            | Error::ForeignElement => self.malformed(pointer, e),
            e => CliError::Failed(format!("{} at {}: {e}", self.name, shown(pointer))),
        }
    }

    fn typed<T: DeserializeOwned>(&self, value: &Value, ptr: &str) -> Result<T> {
        serde_path_to_error::deserialize(value.clone()).map_err(|e| {
            let mut at = ptr.to_string();
            for s in e.path().iter() {
                use serde_path_to_error::Segment;
                match s {
                    Segment::Seq { index } => at = join(&at, index),
                    Segment::Map { key } => at = join(&at, key),
                    Segment::Enum { variant } => at = join(&at, variant),
                    Segment::Unknown => at = join(&at, "?"),
                }
            }
            self.malformed(at, e.into_inner())
        })
    }
}

/// A pointer for messages; the root is shown as `/`.
pub fn shown(pointer: &str) -> &str {
    if pointer.is_empty() {
        "/"
    } else {
        pointer
    }
}

pub fn kind_of(value: &Value) -> Option<&str> {
    value.get("kind").and_then(Value::as_str)
}

/// Field precedence: command-line flag, then the document, then
/// `BONDCAT_FIELD`, then the rationals.
pub fn resolve_field(flag: Option<Field>, in_file: Option<Field>) -> Result<Field> {
    if let Some(f) = flag.or(in_file) {
        return Ok(f);
    }
    match std::env::var(FIELD_VAR) {
        Ok(s) => s.parse().map_err(|e| CliError::Usage(format!("{FIELD_VAR}: {e}"))),
        Err(_) => Ok(Field::Rational),
    }
}

/// Builds library values out of documents.
#[derive(Clone, Copy, Debug, Default)]
pub struct Loader {
    pub field: Option<Field>,
}

impl Loader {
    fn header(&self, src: &Source, v: &Value, ptr: &str, kinds: &[&str]) -> Result<Field> {
        if !v.is_object() {
            return Err(src.malformed(ptr, "expected a JSON object"));
        }
        if let Some(f) = v.get("format") {
            if f.as_str() != Some(FORMAT) {
                return Err(src.malformed(join(ptr, "format"), format!("expected \"{FORMAT}\"")));
            }
        }
        if let Some(k) = v.get("kind") {
            if !k.as_str().is_some_and(|k| kinds.contains(&k)) {
                return Err(src.malformed(join(ptr, "kind"), format!("expected {}, found {k}", kinds.join(" or "))));
            }
        }
        let in_file = match v.get("field") {
            None => None,
            Some(f) => {
                let s = f.as_str().ok_or_else(|| src.malformed(join(ptr, "field"), "expected a string"))?;
                Some(s.parse::<Field>().map_err(|e| src.malformed(join(ptr, "field"), e))?)
            }
        };
        resolve_field(self.field, in_file)
    }

    pub fn object(&self, src: &Source) -> Result<Arc<BondObject>> {
        self.object_at(src, &src.value, "")
    }

    pub fn object_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<Arc<BondObject>> {
        let field = self.header(src, v, ptr, &["object"])?;
        let doc: ObjectDoc = src.typed(v, ptr)?;
        let poset = poset(src, &doc.poset, &join(ptr, "poset"))?;
        let body = BodyDoc { dims: doc.dims, blocks: doc.blocks };
        Ok(Arc::new(body_at(src, &poset, field, &body, ptr)?))
    }

    pub fn morphism(&self, src: &Source) -> Result<BondMorphism> {
        self.morphism_at(src, &src.value, "")
    }

    pub fn morphism_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<BondMorphism> {
        let field = self.header(src, v, ptr, &["morphism"])?;
        let doc: MorphismDoc = src.typed(v, ptr)?;
        if doc.variant.is_some() {
            return Err(src.malformed(join(ptr, "variant"), "morphisms carry no variant"));
        }
        let (s, t, blocks) = morphism_parts(src, field, &doc, ptr)?;
        BondMorphism::new(s, t, blocks).map_err(|e| src.core(ptr, e))
    }

    pub fn witness(&self, src: &Source) -> Result<KMatrixWitness> {
        self.witness_at(src, &src.value, "")
    }

    pub fn witness_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<KMatrixWitness> {
        let field = self.header(src, v, ptr, &["witness"])?;
        let doc: MorphismDoc = src.typed(v, ptr)?;
        let vp = join(ptr, "variant");
        let variant: Variant = doc
            .variant
            .as_deref()
            .ok_or_else(|| src.malformed(&vp, "witnesses need a variant (K or kappa)"))?
            .parse()
            .map_err(|e| src.malformed(&vp, e))?;
        let (s, t, blocks) = morphism_parts(src, field, &doc, ptr)?;
        KMatrixWitness::new(variant, s, t, blocks).map_err(|e| src.core(ptr, e))
    }

    pub fn triangle_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<Triangle> {
        self.header(src, v, ptr, &["triangle"])?;
        let member = |k: &str| v.get(k).ok_or_else(|| src.malformed(ptr, format!("missing member `{k}`")));
        let obj = |k: &str| self.object_at(src, member(k)?, &join(ptr, k));
        let mor = |k: &str| self.morphism_at(src, member(k)?, &join(ptr, k));
        Ok(Triangle { x: obj("x")?, y: obj("y")?, z: obj("z")?, u: mor("u")?, v: mor("v")?, w: mor("w")? })
    }

    pub fn quiver(&self, src: &Source) -> Result<Arc<GentleAlgebra>> {
        self.quiver_at(src, &src.value, "")
    }

    pub fn quiver_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<Arc<GentleAlgebra>> {
        let doc = self.quiver_doc(src, v, ptr)?;
        let q = quiver(src, &doc, ptr)?;
        let rel: Vec<(&str, &str)> = doc.relations.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let order: Option<Vec<&str>> = doc.maximal_order.as_ref().map(|o| o.iter().map(String::as_str).collect());
        let alg = GentleAlgebra::new(q, &rel, order.as_deref()).map_err(|e| src.core(ptr, e))?;
        Ok(Arc::new(alg))
    }

    pub fn quiver_doc(&self, src: &Source, v: &Value, ptr: &str) -> Result<QuiverDoc> {
        if !v.is_object() {
            return Err(src.malformed(ptr, "expected a JSON object"));
        }
        if let Some(k) = v.get("kind") {
            if k.as_str() != Some("quiver") {
                return Err(src.malformed(join(ptr, "kind"), format!("expected quiver, found {k}")));
            }
        }
        if let Some(f) = v.get("format") {
            if f.as_str() != Some(FORMAT) {
                return Err(src.malformed(join(ptr, "format"), format!("expected \"{FORMAT}\"")));
            }
        }
        src.typed(v, ptr)
    }

    /// The algebra of a complex or map document: inline, or a file path
    /// relative to the document.
    fn algebra(&self, src: &Source, v: &Value, ptr: &str) -> Result<Arc<GentleAlgebra>> {
        match v {
            Value::String(p) => {
                let other = Source::read(&src.dir.join(p)).map_err(|e| match e {
                    CliError::Malformed { pointer, message, file } if pointer.is_empty() && file != src.name => {
                        src.malformed(ptr, format!("cannot load `{p}`: {message}"))
                    }
                    e => e,
                })?;
                self.quiver(&other)
            }
            _ => self.quiver_at(src, v, ptr),
        }
    }

    pub fn complex(&self, src: &Source) -> Result<Arc<ProjComplex>> {
        self.complex_at(src, &src.value, "")
    }

    pub fn complex_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<Arc<ProjComplex>> {
        let field = self.header(src, v, ptr, &["complex"])?;
        let doc: ComplexDoc = src.typed(v, ptr)?;
        let alg = self.algebra(src, &doc.algebra, &join(ptr, "algebra"))?;
        let body = ComplexBody { degrees: doc.degrees, differentials: doc.differentials };
        complex_body(src, &alg, field, &body, ptr)
    }

    fn map_parts(&self, src: &Source, v: &Value, ptr: &str, kind: &str, step: i64) -> Result<MapParts> {
        let field = self.header(src, v, ptr, &[kind])?;
        let doc: MapDoc = src.typed(v, ptr)?;
        let alg = self.algebra(src, &doc.algebra, &join(ptr, "algebra"))?;
        let p = complex_body(src, &alg, field, &doc.source, &join(ptr, "source"))?;
        let q = complex_body(src, &alg, field, &doc.target, &join(ptr, "target"))?;
        let blocks = path_blocks(src, &alg, field, &doc.maps, &join(ptr, "maps"), |w, j| q.dim(w.target(), j + step))?;
        Ok((p, q, blocks))
    }

    pub fn chain_map(&self, src: &Source) -> Result<ChainMap> {
        self.chain_map_at(src, &src.value, "")
    }

    pub fn chain_map_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<ChainMap> {
        let (p, q, blocks) = self.map_parts(src, v, ptr, "chainmap", 0)?;
        ChainMap::new(p, q, blocks).map_err(|e| src.core(ptr, e))
    }

    pub fn homotopy(&self, src: &Source) -> Result<HomotopyWitness> {
        self.homotopy_at(src, &src.value, "")
    }

    pub fn homotopy_at(&self, src: &Source, v: &Value, ptr: &str) -> Result<HomotopyWitness> {
        let (p, q, blocks) = self.map_parts(src, v, ptr, "homotopy", -1)?;
        HomotopyWitness::new(p, q, blocks).map_err(|e| src.core(ptr, e))
    }
}

type MapParts = (Arc<ProjComplex>, Arc<ProjComplex>, BTreeMap<i64, PathBlocks>);

fn poset(src: &Source, doc: &PosetDoc, ptr: &str) -> Result<Arc<BasePoset>> {
    BasePoset::new(&doc.names, &doc.pairs).map(Arc::new).map_err(|e| src.core(ptr, e))
}

fn element(src: &Source, p: &BasePoset, (name, degree): &(String, i64), ptr: &str) -> Result<GradedElement> {
    p.element(name, *degree).map_err(|e| src.core(ptr, e))
}

fn scalar(src: &Source, field: Field, n: &Num, ptr: &str) -> Result<Scalar> {
    match n {
        Num::Int(i) => Ok(Scalar::from_i64(field, *i)),
        Num::Text(s) => Scalar::parse(field, s).map_err(|e| src.core(ptr, e)),
    }
}

/// Rows must be equally long; an empty list of rows takes `cols` columns.
fn matrix(src: &Source, field: Field, rows: &[Vec<Num>], cols: usize, ptr: &str) -> Result<DenseMatrix> {
    let cols = rows.first().map_or(cols, Vec::len);
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = join(ptr, i);
        if r.len() != cols {
            return Err(src.malformed(rp, format!("row has {} entries, expected {cols}", r.len())));
        }
        out.push(r.iter().enumerate().map(|(k, n)| scalar(src, field, n, &join(&rp, k))).collect::<Result<Vec<_>>>()?);
    }
    DenseMatrix::from_rows(field, cols, out).map_err(|e| src.core(ptr, e))
}

fn dims(src: &Source, p: &BasePoset, bands: &[(String, i64, usize)], ptr: &str) -> Result<DimensionVector> {
    let mut out = DimensionVector::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, (name, degree, d)) in bands.iter().enumerate() {
        let bp = join(ptr, i);
        let x = element(src, p, &(name.clone(), *degree), &bp)?;
        if !seen.insert(x) {
            return Err(src.malformed(bp, format!("band [{name},{degree}] listed twice")));
        }
        out.set(x, *d);
    }
    Ok(out)
}

fn blocks(src: &Source, p: &BasePoset, field: Field, docs: &[BlockDoc], cols: &DimensionVector, ptr: &str) -> Result<BlockMatrix> {
    let mut map = BTreeMap::new();
    for (i, b) in docs.iter().enumerate() {
        let bp = join(ptr, i);
        let x = element(src, p, &b.row, &join(&bp, "row"))?;
        let y = element(src, p, &b.col, &join(&bp, "col"))?;
        let m = matrix(src, field, &b.entries, cols.get(y), &join(&bp, "entries"))?;
        if map.insert((x, y), m).is_some() {
            return Err(src.malformed(bp, "block listed twice"));
        }
    }
    Ok(BlockMatrix::from_map(map))
}

fn body_at(src: &Source, p: &Arc<BasePoset>, field: Field, doc: &BodyDoc, ptr: &str) -> Result<BondObject> {
    let d = dims(src, p, &doc.dims, &join(ptr, "dims"))?;
    let b = blocks(src, p, field, &doc.blocks, &d, &join(ptr, "blocks"))?;
    BondObject::new(p.clone(), field, d, b).map_err(|e| src.core(ptr, e))
}

fn morphism_parts(
    src: &Source,
    field: Field,
    doc: &MorphismDoc,
    ptr: &str,
) -> Result<(Arc<BondObject>, Arc<BondObject>, BlockMatrix)> {
    let p = poset(src, &doc.poset, &join(ptr, "poset"))?;
    let s = Arc::new(body_at(src, &p, field, &doc.source, &join(ptr, "source"))?);
    let t = Arc::new(body_at(src, &p, field, &doc.target, &join(ptr, "target"))?);
    let b = blocks(src, &p, field, &doc.blocks, t.dims(), &join(ptr, "blocks"))?;
    Ok((s, t, b))
}

fn quiver(src: &Source, doc: &QuiverDoc, ptr: &str) -> Result<Quiver> {
    let arrows: Vec<(String, String, String)> =
        doc.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone())).collect();
    Quiver::new(&doc.vertices, &arrows).map_err(|e| src.core(ptr, e))
}

fn degree(src: &Source, key: &str, ptr: &str) -> Result<i64> {
    key.trim().parse().map_err(|_| src.malformed(ptr, format!("`{key}` is not a degree")))
}

fn path_blocks(
    src: &Source,
    alg: &GentleAlgebra,
    field: Field,
    by_degree: &Ordered<Vec<PathBlockDoc>>,
    ptr: &str,
    cols: impl Fn(&Path, i64) -> usize,
) -> Result<BTreeMap<i64, PathBlocks>> {
    let mut out: BTreeMap<i64, PathBlocks> = BTreeMap::new();
    for (key, list) in &by_degree.0 {
        let dp = join(ptr, key);
        let j = degree(src, key, &dp)?;
        if out.contains_key(&j) {
            return Err(src.malformed(dp, format!("degree {j} listed twice")));
        }
        let mut m = PathBlocks::new();
        for (i, b) in list.iter().enumerate() {
            let bp = join(&dp, i);
            let w = alg.parse_path(&b.path).map_err(|e| src.core(&join(&bp, "path"), e))?;
            let x = matrix(src, field, &b.matrix, cols(&w, j), &join(&bp, "matrix"))?;
            if m.insert(w, x).is_some() {
                return Err(src.malformed(bp, format!("path `{}` listed twice in degree {j}", b.path)));
            }
        }
        out.insert(j, m);
    }
    Ok(out)
}

fn complex_body(src: &Source, alg: &Arc<GentleAlgebra>, field: Field, body: &ComplexBody, ptr: &str) -> Result<Arc<ProjComplex>> {
    let mut mults: Multiplicities = BTreeMap::new();
    let degrees_ptr = join(ptr, "degrees");
    for (key, per_vertex) in &body.degrees.0 {
        let dp = join(&degrees_ptr, key);
        let j = degree(src, key, &dp)?;
        if mults.contains_key(&j) {
            return Err(src.malformed(dp, format!("degree {j} listed twice")));
        }
        let mut m = BTreeMap::new();
        for (v, n) in &per_vertex.0 {
            let vi = alg.quiver().vertex_index(v).ok_or_else(|| src.malformed(join(&dp, v), format!("unknown vertex `{v}`")))?;
            m.insert(vi, *n);
        }
        mults.insert(j, m);
    }
    let at = |v: usize, j: i64| mults.get(&j).and_then(|m| m.get(&v)).copied().unwrap_or(0);
    let diff = path_blocks(src, alg, field, &body.differentials, &join(ptr, "differentials"), |w, j| at(w.target(), j + 1))?;
    ProjComplex::new(alg.clone(), field, mults, diff).map(Arc::new).map_err(|e| src.core(ptr, e))
}

// ---- emission ----

fn header(kind: &str, field: Option<Field>) -> (Option<String>, Option<String>, Option<String>) {
    (Some(FORMAT.into()), Some(kind.into()), field.map(|f| f.to_string()))
}

fn entries(m: &DenseMatrix) -> Vec<Vec<Num>> {
    m.to_rows().iter().map(|r| r.iter().map(|s| Num::Text(s.to_string())).collect()).collect()
}

fn at(p: &BasePoset, x: GradedElement) -> (String, i64) {
    (p.name(x.base).to_string(), x.degree)
}

pub fn poset_doc(p: &BasePoset) -> PosetDoc {
    PosetDoc {
        names: p.names().to_vec(),
        pairs: p.pairs().map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect(),
    }
}

fn block_docs(p: &BasePoset, m: &BlockMatrix) -> Vec<BlockDoc> {
    m.iter().map(|(&(x, y), b)| BlockDoc { row: at(p, x), col: at(p, y), entries: entries(b) }).collect()
}

fn body_doc(b: &BondObject) -> BodyDoc {
    let p = b.poset();
    BodyDoc {
        dims: b.dims().iter().map(|(x, d)| (p.name(x.base).to_string(), x.degree, d)).collect(),
        blocks: block_docs(p, b.blocks()),
    }
}

fn placement_docs(alg: &GentleAlgebra, p: &BasePoset, placed: &[Placed]) -> Vec<PlacedDoc> {
    placed
        .iter()
        .map(|x| PlacedDoc { path: alg.path_name(&x.path), degree: x.degree, row: at(p, x.row), col: at(p, x.col) })
        .collect()
}

pub fn object_doc(b: &BondObject) -> ObjectDoc {
    let (format, kind, field) = header("object", Some(b.field()));
    let body = body_doc(b);
    ObjectDoc { format, kind, field, poset: poset_doc(b.poset()), dims: body.dims, blocks: body.blocks, placement: None }
}

pub fn object_with_placement(b: &BondObject, alg: &GentleAlgebra, placed: &[Placed]) -> ObjectDoc {
    ObjectDoc { placement: Some(placement_docs(alg, b.poset(), placed)), ..object_doc(b) }
}

fn morphism_like(kind: &str, variant: Option<Variant>, s: &BondObject, t: &BondObject, m: &BlockMatrix) -> MorphismDoc {
    let (format, kind, field) = header(kind, Some(s.field()));
    MorphismDoc {
        format,
        kind,
        field,
        variant: variant.map(|v| v.to_string()),
        poset: poset_doc(s.poset()),
        source: body_doc(s),
        target: body_doc(t),
        blocks: block_docs(s.poset(), m),
        placement: None,
    }
}

pub fn morphism_doc(f: &BondMorphism) -> MorphismDoc {
    morphism_like("morphism", None, f.source(), f.target(), f.blocks())
}

pub fn morphism_with_placement(f: &BondMorphism, alg: &GentleAlgebra, placed: &[Placed]) -> MorphismDoc {
    MorphismDoc { placement: Some(placement_docs(alg, f.source().poset(), placed)), ..morphism_doc(f) }
}

pub fn witness_doc(l: &KMatrixWitness) -> MorphismDoc {
    morphism_like("witness", Some(l.variant()), l.source(), l.target(), l.blocks())
}

pub fn triangle_value(t: &Triangle) -> Value {
    json!({
        "format": FORMAT,
        "kind": "triangle",
        "x": to_value(&object_doc(&t.x)),
        "y": to_value(&object_doc(&t.y)),
        "z": to_value(&object_doc(&t.z)),
        "u": to_value(&morphism_doc(&t.u)),
        "v": to_value(&morphism_doc(&t.v)),
        "w": to_value(&morphism_doc(&t.w)),
    })
}

pub fn quiver_doc(alg: &GentleAlgebra) -> QuiverDoc {
    let q = alg.quiver();
    let arrow = |i: usize| q.arrow(i).name.clone();
    QuiverDoc {
        format: Some(FORMAT.into()),
        kind: Some("quiver".into()),
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowDoc { name: a.name.clone(), from: q.vertex_name(a.source).into(), to: q.vertex_name(a.target).into() })
            .collect(),
        relations: alg.relations().iter().map(|&(a, b)| (arrow(a), arrow(b))).collect(),
        maximal_order: Some(alg.maximal_paths().iter().map(|m| alg.path_name(m)).collect()),
    }
}

fn path_block_docs(alg: &GentleAlgebra, blocks: &BTreeMap<i64, PathBlocks>) -> Ordered<Vec<PathBlockDoc>> {
    Ordered(
        blocks
            .iter()
            .map(|(j, m)| {
                let list = m.iter().map(|(w, x)| PathBlockDoc { path: alg.path_name(w), matrix: entries(x) }).collect();
                (j.to_string(), list)
            })
            .collect(),
    )
}

fn complex_body_doc(p: &ProjComplex) -> ComplexBody {
    let q = p.algebra().quiver();
    let degrees = p
        .dims()
        .iter()
        .map(|(j, m)| (j.to_string(), Ordered(m.iter().map(|(&v, &n)| (q.vertex_name(v).to_string(), n)).collect())))
        .collect();
    ComplexBody { degrees: Ordered(degrees), differentials: path_block_docs(p.algebra(), p.differentials()) }
}

pub fn complex_doc(p: &ProjComplex) -> ComplexDoc {
    let (format, kind, field) = header("complex", Some(p.field()));
    let body = complex_body_doc(p);
    ComplexDoc {
        format,
        kind,
        field,
        algebra: to_value(&quiver_doc(p.algebra())),
        degrees: body.degrees,
        differentials: body.differentials,
    }
}

fn map_doc(kind: &str, p: &ProjComplex, q: &ProjComplex, blocks: &BTreeMap<i64, PathBlocks>) -> MapDoc {
    let (format, kind, field) = header(kind, Some(p.field()));
    MapDoc {
        format,
        kind,
        field,
        algebra: to_value(&quiver_doc(p.algebra())),
        source: complex_body_doc(p),
        target: complex_body_doc(q),
        maps: path_block_docs(p.algebra(), blocks),
    }
}

pub fn chain_map_doc(f: &ChainMap) -> MapDoc {
    map_doc("chainmap", f.source(), f.target(), f.blocks())
}

pub fn homotopy_doc(s: &HomotopyWitness) -> MapDoc {
    map_doc("homotopy", s.source(), s.target(), s.blocks())
}

pub fn to_value<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

// ---- rendering ----

/// Pretty JSON with short arrays of scalars, matrices and band triples kept
/// on one line. Ends with a newline.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn scalar_like(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| scalar_like(x) || matches!(x, Value::Array(ys) if ys.iter().all(scalar_like))),
        _ => scalar_like(v),
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String(k.clone()));
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{close}}}");
        }
        Value::Array(xs) if !xs.is_empty() && !inline(v) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{close}]");
        }
        Value::Array(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, depth + 1);
            }
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}
