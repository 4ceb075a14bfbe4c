//! Versioned JSON files for instances and certificates.
//!
//! Instances are written as one compact document with keys in alphabetical
//! order and arrays in id order, followed by a newline. The writer walks the
//! instance directly, so no intermediate JSON tree is built.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Block;
use crate::instance::{BlockId, InstanceBuilder, PartitionedInstance, Role, VertexId, VertexInfo};
use crate::transversal::{Certificate, Step};

pub const FORMAT_VERSION: u32 = 1;

struct FileView<'a>(&'a PartitionedInstance);

struct BlocksView<'a>(&'a PartitionedInstance);

struct EdgesView<'a>(&'a PartitionedInstance);

struct VerticesView<'a>(&'a PartitionedInstance, &'a [VertexId]);

#[derive(Serialize)]
struct BlockOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    grade: Option<u32>,
    id: BlockId,
    #[serde(skip_serializing_if = "is_false")]
    padding: bool,
    vertices: VerticesView<'a>,
}

#[derive(Serialize)]
struct VertexOut {
    id: VertexId,
    #[serde(skip_serializing_if = "Option::is_none")]
    role: Option<Role>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl Serialize for FileView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InstanceFile", 5)?;
        st.serialize_field("blocks", &BlocksView(self.0))?;
        st.serialize_field("edges", &EdgesView(self.0))?;
        st.serialize_field("meta", self.0.meta())?;
        st.serialize_field("r", &self.0.uniformity())?;
        st.serialize_field("version", &FORMAT_VERSION)?;
        st.end()
    }
}

impl Serialize for BlocksView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.blocks().iter().map(|b| BlockOut {
            grade: b.grade,
            id: b.id,
            padding: b.padding,
            vertices: VerticesView(self.0, &b.members),
        }))
    }
}

impl Serialize for VerticesView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.1.iter().map(|&v| VertexOut {
            id: v,
            role: self.0.vertices()[v.index()].role,
        }))
    }
}

impl Serialize for EdgesView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.edges())
    }
}

pub fn write_instance(w: impl Write, inst: &PartitionedInstance) -> Result<()> {
    let mut w = BufWriter::new(w);
    serde_json::to_writer(&mut w, &FileView(inst))?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn instance_to_string(inst: &PartitionedInstance) -> String {
    let mut buf = Vec::new();
    write_instance(&mut buf, inst).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    blocks: Vec<RawBlock>,
    edges: Vec<Vec<u32>>,
    #[serde(default)]
    meta: BTreeMap<String, String>,
    r: usize,
    version: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    #[serde(default)]
    grade: Option<u32>,
    id: u32,
    #[serde(default)]
    padding: bool,
    vertices: Vec<RawVertex>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: u32,
    #[serde(default)]
    role: Option<Role>,
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_instance(text: &str) -> Result<PartitionedInstance> {
    let raw: RawFile = serde_json::from_str(text).map_err(syntax_error)?;
    if raw.version != FORMAT_VERSION {
        return Err(Error::parse(
            "version",
            format!("unsupported version {}, expected {FORMAT_VERSION}", raw.version),
        ));
    }
    if raw.r < 2 {
        return Err(Error::parse("r", format!("uniformity {} < 2", raw.r)));
    }
    let total: usize = raw.blocks.iter().map(|b| b.vertices.len()).sum();
    let mut infos: Vec<Option<VertexInfo>> = vec![None; total];
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for (i, rb) in raw.blocks.iter().enumerate() {
        if rb.id as usize != i {
            return Err(Error::parse(
                format!("blocks[{i}].id"),
                format!("block id {} out of order, expected {i}", rb.id),
            ));
        }
        let id = BlockId(rb.id);
        let mut members = Vec::with_capacity(rb.vertices.len());
        for (j, rv) in rb.vertices.iter().enumerate() {
            let at = || format!("blocks[{i}].vertices[{j}]");
            let slot = infos
                .get_mut(rv.id as usize)
                .ok_or_else(|| Error::parse(at(), format!("vertex id {} out of range 0..{total}", rv.id)))?;
            if let Some(prev) = slot {
                return Err(Error::parse(
                    at(),
                    format!("partition violation: v{} already belongs to {}", rv.id, prev.block),
                ));
            }
            *slot = Some(VertexInfo {
                block: id,
                role: rv.role,
            });
            members.push(VertexId(rv.id));
        }
        blocks.push(Block {
            id,
            members,
            grade: rb.grade,
            padding: rb.padding,
        });
    }

    let mut b = InstanceBuilder::new(raw.r);
    for info in infos {
        // ids are in range and unique, and there are `total` of them
        b.push_raw_vertex(info.expect("every id assigned"));
    }
    for blk in blocks {
        b.push_raw_block(blk);
    }
    let mut seen = HashSet::with_capacity(raw.edges.len());
    for (e, edge) in raw.edges.iter().enumerate() {
        let at = || format!("edges[{e}]");
        if edge.len() != raw.r {
            return Err(Error::parse(
                at(),
                format!("edge has {} vertices, expected {}", edge.len(), raw.r),
            ));
        }
        let mut sorted: Vec<VertexId> = edge.iter().map(|&v| VertexId(v)).collect();
        sorted.sort_unstable();
        if let Some(v) = sorted.iter().find(|v| v.index() >= total) {
            return Err(Error::parse(at(), format!("unknown vertex {v}")));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse(at(), "edge repeats a vertex"));
        }
        if !seen.insert(sorted.clone()) {
            return Err(Error::parse(at(), "duplicate edge"));
        }
        b.add_edge(sorted);
    }
    for (k, v) in raw.meta {
        b.set_meta(k, v);
    }
    b.finish()
}

pub fn read_instance(path: &Path) -> Result<PartitionedInstance> {
    parse_instance(&fs::read_to_string(path)?)
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    fill(tmp.as_file_mut())?;
    // temporary files are created owner-only; keep what a plain write would give
    if let Some(perms) = fs::metadata(path)
        .map(|m| m.permissions())
        .ok()
        .or_else(default_permissions)
    {
        tmp.as_file().set_permissions(perms)?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(unix)]
fn default_permissions() -> Option<fs::Permissions> {
    use std::os::unix::fs::PermissionsExt;
    Some(fs::Permissions::from_mode(0o644))
}

#[cfg(not(unix))]
fn default_permissions() -> Option<fs::Permissions> {
    None
}

pub fn save_instance(path: &Path, inst: &PartitionedInstance) -> Result<()> {
    write_atomic(path, |w| write_instance(w, inst))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    conclusion: BlockId,
    steps: Vec<Step>,
    version: u32,
}

pub fn certificate_to_string(cert: &Certificate) -> String {
    let file = CertificateFile {
        conclusion: cert.conclusion,
        steps: cert.steps.clone(),
        version: FORMAT_VERSION,
    };
    let mut s = serde_json::to_string(&file).expect("certificate serializes");
    s.push('\n');
    s
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let file: CertificateFile = serde_json::from_str(text).map_err(syntax_error)?;
    if file.version != FORMAT_VERSION {
        return Err(Error::parse(
            "version",
            format!("unsupported version {}, expected {FORMAT_VERSION}", file.version),
        ));
    }
    Ok(Certificate {
        steps: file.steps,
        conclusion: file.conclusion,
    })
}

pub fn save_certificate(path: &Path, cert: &Certificate) -> Result<()> {
    let text = certificate_to_string(cert);
    write_atomic(path, |w| Ok(w.write_all(text.as_bytes())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> PartitionedInstance {
        let mut b = InstanceBuilder::new(2);
        let x = b.add_block(Some(1));
        let y = b.add_block(None);
        b.mark_padding(y);
        let xs = b.add_vertices(x, 2, Some(Role::Light));
        let ys = b.add_vertices(y, 1, None);
        b.add_edge(vec![xs[1], ys[0]]);
        b.set_meta("t", 2);
        b.finish().unwrap()
    }

    #[test]
    fn exact_layout() {
        assert_eq!(
            instance_to_string(&small()),
            concat!(
                r#"{"blocks":[{"grade":1,"id":0,"vertices":[{"id":0,"role":"light"},{"id":1,"role":"light"}]},"#,
                r#"{"id":1,"padding":true,"vertices":[{"id":2}]}],"edges":[[1,2]],"meta":{"t":"2"},"r":2,"version":1}"#,
                "\n"
            )
        );
    }

    #[test]
    fn round_trip() {
        let inst = small();
        let text = instance_to_string(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(instance_to_string(&back), text);
    }

    #[test]
    fn located_errors() {
        let text = instance_to_string(&small());
        let bad = text.replace(r#"{"id":2}"#, r#"{"id":1}"#);
        match parse_instance(&bad) {
            Err(Error::Parse { location, message }) => {
                assert_eq!(location, "blocks[1].vertices[0]");
                assert!(message.contains("partition violation"));
            }
            other => panic!("{other:?}"),
        }
        let dup = text.replace("[[1,2]]", "[[1,2],[2,1]]");
        assert!(matches!(parse_instance(&dup), Err(Error::Parse { location, .. }) if location == "edges[1]"));
        let v2 = text.replace(r#""version":1"#, r#""version":2"#);
        assert!(matches!(parse_instance(&v2), Err(Error::Parse { location, .. }) if location == "version"));
        assert!(matches!(parse_instance("{"), Err(Error::Parse { .. })));
    }
}
