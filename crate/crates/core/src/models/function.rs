use rand::Rng;

use super::{ModelError, SubsetSelection};

/// Total three-place function `[m]^3 -> [m]` (zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryFunction {
    size: usize,
    table: Vec<u32>,
}

impl TernaryFunction {
    pub fn from_table(size: usize, table: Vec<u32>) -> Result<Self, ModelError> {
        if table.len() != size * size * size || table.iter().any(|&v| v as usize >= size) {
            return Err(ModelError::InvalidTable { size });
        }
        Ok(TernaryFunction { size, table })
    }

    pub fn constant(size: usize, value: usize) -> Self {
        assert!(value < size);
        TernaryFunction {
            size,
            table: vec![value as u32; size * size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.table[(x * self.size + y) * self.size + z] as usize
    }

    /// Partial two-place function on `subset`: `F*_S(x,y) = F(x,y,z)` for the
    /// least `z` whose value lands in the subset.
    pub fn project(&self, subset: &SubsetSelection) -> PartialBinaryFunction {
        debug_assert_eq!(subset.host(), self.size);
        let members = subset.members();
        let mut table = Vec::with_capacity(members.len() * members.len());
        for &x in members {
            for &y in members {
                let hit = (0..self.size)
                    .map(|z| self.get(x, y, z))
                    .find(|&v| subset.contains(v));
                table.push(hit);
            }
        }
        PartialBinaryFunction {
            domain: members.to_vec(),
            table,
        }
    }

    /// `m=<size>` followed by `x y z -> v` for every triple, one-based, in
    /// lexicographic order.
    pub fn to_dump(&self) -> String {
        let mut out = format!("m={}\n", self.size);
        for x in 0..self.size {
            for y in 0..self.size {
                for z in 0..self.size {
                    out.push_str(&format!("{} {} {} -> {}\n", x + 1, y + 1, z + 1, self.get(x, y, z) + 1));
                }
            }
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self, ModelError> {
        let mut lines = super::dump_lines(text);
        let size = super::parse_header(&mut lines)?;
        let mut table: Vec<Option<u32>> = vec![None; size * size * size];
        for (line_no, line) in lines {
            let (args, value) = line
                .split_once("->")
                .ok_or_else(|| ModelError::dump(line_no, "expected `x y z -> v`"))?;
            let args: Vec<&str> = args.split_whitespace().collect();
            let [x, y, z] = args.as_slice() else {
                return Err(ModelError::dump(line_no, "expected three arguments"));
            };
            let x = super::parse_element(x, size, line_no)?;
            let y = super::parse_element(y, size, line_no)?;
            let z = super::parse_element(z, size, line_no)?;
            let v = super::parse_element(value.trim(), size, line_no)?;
            let slot = &mut table[(x * size + y) * size + z];
            if slot.is_some() {
                return Err(ModelError::dump(line_no, "duplicate entry"));
            }
            *slot = Some(v as u32);
        }
        let table = table
            .into_iter()
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| ModelError::dump(0, "table is missing entries"))?;
        Ok(TernaryFunction { size, table })
    }
}

pub fn sample_ternary_function<R: Rng + ?Sized>(size: usize, rng: &mut R) -> TernaryFunction {
    assert!(size >= 1);
    let table = (0..size * size * size)
        .map(|_| rng.gen_range(0..size as u32))
        .collect();
    TernaryFunction { size, table }
}

/// Two-place partial function on a subset of a host, values are host elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialBinaryFunction {
    domain: Vec<usize>,
    table: Vec<Option<usize>>,
}

impl PartialBinaryFunction {
    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    /// Value at domain positions `(a, b)`.
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.domain.len() + b]
    }

    pub fn totally_defined(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn undefined_count(&self) -> usize {
        self.table.iter().filter(|v| v.is_none()).count()
    }

    /// Relabels the domain to `0..|S|` by position; `None` if any entry is undefined.
    pub fn to_total(&self) -> Option<BinaryFunction> {
        let table = self
            .table
            .iter()
            .map(|v| v.map(|h| self.domain.binary_search(&h).expect("value outside domain") as u32))
            .collect::<Option<Vec<u32>>>()?;
        Some(BinaryFunction {
            size: self.domain.len(),
            table,
        })
    }
}

/// Total two-place function on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryFunction {
    size: usize,
    table: Vec<u32>,
}

impl BinaryFunction {
    pub fn from_table(size: usize, table: Vec<u32>) -> Result<Self, ModelError> {
        if table.len() != size * size || table.iter().any(|&v| v as usize >= size) {
            return Err(ModelError::InvalidTable { size });
        }
        Ok(BinaryFunction { size, table })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let v = f(x, y);
                assert!(v < size);
                table.push(v as u32);
            }
        }
        BinaryFunction { size, table }
    }

    /// The `index`-th function in base-`size` order over the row-major table;
    /// `index < size^(size^2)`.
    pub fn from_index(size: usize, mut index: u64) -> Self {
        let mut table = vec![0u32; size * size];
        for slot in table.iter_mut() {
            *slot = (index % size as u64) as u32;
            index /= size as u64;
        }
        BinaryFunction { size, table }
    }

    /// Inverse of [`BinaryFunction::from_index`].
    pub fn index(&self) -> u64 {
        self.table
            .iter()
            .rev()
            .fold(0u64, |acc, &v| acc * self.size as u64 + v as u64)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }
}

pub fn sample_binary_function<R: Rng + ?Sized>(size: usize, rng: &mut R) -> BinaryFunction {
    let table = (0..size * size)
        .map(|_| rng.gen_range(0..size as u32))
        .collect();
    BinaryFunction { size, table }
}

/// `i^2 ((m - i)/m)^m`: union bound on the chance that a projection onto a
/// uniform `i`-subset of `[m]` has an undefined entry.
pub fn undefinedness_bound(m: usize, i: usize) -> f64 {
    let i = i as f64;
    let m_f = m as f64;
    i * i * ((m_f - i) / m_f).powi(m as i32)
}
