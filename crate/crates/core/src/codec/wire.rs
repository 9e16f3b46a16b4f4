//! Byte layout for streaming-code packets.
//!
//! ```text
//! info : 0x00 | seq: u32 BE | payload
//! coded: 0x01 | left: u32 BE | right: u32 BE | coeffs (right-left+1 bytes) | payload
//! ```

use alloc::vec::Vec;

use super::{CodedPacket, InfoPacket, Packet};
use crate::error::Error;
use crate::gf::Gf256;

const TAG_INFO: u8 = 0;
const TAG_CODED: u8 = 1;

fn put_u32(out: &mut Vec<u8>, v: u64) -> Result<(), Error> {
    let v = u32::try_from(v).map_err(|_| Error::InvalidParameter("sequence number exceeds 32 bits"))?;
    out.extend_from_slice(&v.to_be_bytes());
    Ok(())
}

fn get_u32(buf: &[u8], at: usize) -> Result<u64, Error> {
    let b = buf.get(at..at + 4).ok_or(Error::Malformed("truncated header"))?;
    Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]) as u64)
}

impl Packet {
    pub fn to_bytes(&self) -> Result<Vec<u8>, Error> {
        let mut out = Vec::new();
        match self {
            Packet::Info(p) => {
                out.push(TAG_INFO);
                put_u32(&mut out, p.seq)?;
                out.extend_from_slice(&p.payload);
            }
            Packet::Coded(c) => {
                if c.right < c.left || c.coeffs.len() != c.window_len() {
                    return Err(Error::Malformed("coefficient count does not match window"));
                }
                out.push(TAG_CODED);
                put_u32(&mut out, c.left)?;
                put_u32(&mut out, c.right)?;
                out.extend(c.coeffs.iter().map(|x| x.0));
                out.extend_from_slice(&c.payload);
            }
        }
        Ok(out)
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Packet, Error> {
        match buf.first() {
            Some(&TAG_INFO) => {
                let seq = get_u32(buf, 1)?;
                Ok(Packet::Info(InfoPacket { seq, payload: buf[5..].to_vec() }))
            }
            Some(&TAG_CODED) => {
                let left = get_u32(buf, 1)?;
                let right = get_u32(buf, 5)?;
                if right < left {
                    return Err(Error::Malformed("window right edge before left edge"));
                }
                let w = (right - left + 1) as usize;
                let coeffs = buf.get(9..9 + w).ok_or(Error::Malformed("truncated coefficients"))?;
                Ok(Packet::Coded(CodedPacket {
                    left,
                    right,
                    coeffs: coeffs.iter().map(|&x| Gf256(x)).collect(),
                    payload: buf[9 + w..].to_vec(),
                }))
            }
            Some(_) => Err(Error::Malformed("unknown packet tag")),
            None => Err(Error::Malformed("empty buffer")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn layout_is_fixed() {
        let p = Packet::Coded(CodedPacket {
            left: 3,
            right: 4,
            coeffs: vec![Gf256(0xAA), Gf256(0x01)],
            payload: vec![9, 8],
        });
        assert_eq!(p.to_bytes().unwrap(), vec![1, 0, 0, 0, 3, 0, 0, 0, 4, 0xAA, 0x01, 9, 8]);
        let i = Packet::Info(InfoPacket { seq: 258, payload: vec![7] });
        assert_eq!(i.to_bytes().unwrap(), vec![0, 0, 0, 1, 2, 7]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Packet::from_bytes(&[]).is_err());
        assert!(Packet::from_bytes(&[7, 0, 0, 0, 1]).is_err());
        assert!(Packet::from_bytes(&[1, 0, 0, 0, 5, 0, 0, 0, 3]).is_err());
        assert!(Packet::from_bytes(&[1, 0, 0, 0, 1, 0, 0, 0, 3, 1]).is_err());
        let big = Packet::Info(InfoPacket { seq: 1 << 33, payload: vec![] });
        assert!(big.to_bytes().is_err());
    }

    proptest::proptest! {
        #[test]
        fn round_trip(left in 1u64..1000, w in 1usize..20, seed: u8, len in 0usize..16) {
            let coeffs = (0..w).map(|i| Gf256(seed.wrapping_add(i as u8))).collect();
            let payload = (0..len).map(|i| (i as u8) ^ seed).collect();
            let p = Packet::Coded(CodedPacket { left, right: left + w as u64 - 1, coeffs, payload });
            proptest::prop_assert_eq!(Packet::from_bytes(&p.to_bytes().unwrap()).unwrap(), p);
        }
    }
}
