#include "wmap/serialize.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace wmap {

namespace {

void put_u32(std::string& buf, u32 v) {
    for (int k = 0; k < 4; ++k) buf.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}
void put_u64(std::string& buf, u64 v) {
    for (int k = 0; k < 8; ++k) buf.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}
void put_varint(std::string& buf, u64 v) {
    while (v >= 0x80) {
        buf.push_back(static_cast<char>(v | 0x80));
        v >>= 7;
    }
    buf.push_back(static_cast<char>(v));
}

class Reader {
public:
    Reader(const char* data, size_t size) : data_(data), size_(size) {}

    u32 u32v() {
        need(4);
        u32 v = 0;
        for (int k = 0; k < 4; ++k) v |= static_cast<u32>(static_cast<u8>(data_[pos_ + k])) << (8 * k);
        pos_ += 4;
        return v;
    }
    u64 u64v() {
        need(8);
        u64 v = 0;
        for (int k = 0; k < 8; ++k) v |= static_cast<u64>(static_cast<u8>(data_[pos_ + k])) << (8 * k);
        pos_ += 8;
        return v;
    }
    u64 varint() {
        u64 v = 0;
        int shift = 0;
        while (true) {
            need(1);
            u8 b = static_cast<u8>(data_[pos_++]);
            v |= static_cast<u64>(b & 0x7f) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
            if (shift > 63) throw data_error("malformed varint");
        }
        return v;
    }
    std::string bytes(size_t n) {
        need(n);
        std::string s(data_ + pos_, n);
        pos_ += n;
        return s;
    }
    size_t remaining() const { return size_ - pos_; }

private:
    void need(size_t n) const {
        if (pos_ + n > size_) throw data_error("index file truncated");
    }
    const char* data_;
    size_t size_;
    size_t pos_ = 0;
};

void put_section(std::ostream& out, const std::string& body) {
    std::string len;
    put_u64(len, body.size());
    out.write(len.data(), static_cast<std::streamsize>(len.size()));
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

std::string read_section(std::istream& in) {
    char lenbuf[8];
    if (!in.read(lenbuf, 8)) throw data_error("index file truncated");
    u64 len = 0;
    for (int k = 0; k < 8; ++k) len |= static_cast<u64>(static_cast<u8>(lenbuf[k])) << (8 * k);
    std::string body(len, '\0');
    if (len > 0 && !in.read(body.data(), static_cast<std::streamsize>(len)))
        throw data_error("index file truncated");
    return body;
}

} // namespace

void IndexCodec::save(const WheelerMap& index, std::ostream& out) {
    std::string header;
    header.append(kMagic, 4);
    put_u32(header, kVersion);
    put_u64(header, index.text_length());
    put_u64(header, index.bwt_run_count());
    put_u64(header, index.tag_run_count());
    put_u64(header, index.grammar_size());
    put_u64(header, index.frequency_threshold());
    put_u64(header, index.fingerprint_base());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));

    {  // tag dictionary
        std::string s;
        put_u64(s, index.tag_dict().size());
        for (const std::string& payload : index.tag_dict()) {
            put_u32(s, static_cast<u32>(payload.size()));
            s.append(payload);
        }
        put_section(out, s);
    }
    {  // BWT runs and boundary samples
        const RLBWT& b = index.bwt();
        std::string s;
        for (u32 r = 0; r < b.num_runs(); ++r) {
            s.push_back(static_cast<char>(b.run_chars()[r]));
            put_varint(s, b.run_lens()[r]);
        }
        for (u64 v : b.sa_head_samples()) put_u64(s, v);
        for (u64 v : b.sa_tail_samples()) put_u64(s, v);
        put_section(out, s);
    }
    {  // grammar
        const Slp& g = index.slp();
        std::string s;
        put_u32(s, g.num_terminals());
        for (u32 i = 0; i < g.num_terminals(); ++i)
            s.push_back(static_cast<char>(g.terminal_char(i)));
        put_u32(s, static_cast<u32>(g.rule_lefts().size()));
        for (size_t i = 0; i < g.rule_lefts().size(); ++i) {
            put_u32(s, g.rule_lefts()[i]);
            put_u32(s, g.rule_rights()[i]);
        }
        put_u32(s, g.root());
        put_section(out, s);
    }
    {  // tag runs
        const TagRunIndex& t = index.runs();
        std::string s;
        for (u32 r = 0; r < t.num_runs(); ++r) put_u32(s, t.run_tags()[r]);
        for (u32 r = 0; r < t.num_runs(); ++r) put_varint(s, t.run_lens()[r]);
        for (u64 v : t.sa_head_samples()) put_u64(s, v);
        for (u64 v : t.sa_tail_samples()) put_u64(s, v);
        for (u64 v : t.l_array()) put_u64(s, v);
        put_section(out, s);
    }
    {  // triple lengths
        std::string s;
        for (u64 v : index.triple().lens()) put_u64(s, v);
        put_section(out, s);
    }
}

WheelerMap IndexCodec::load(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw data_error("not an index file");
    char verbuf[4];
    if (!in.read(verbuf, 4)) throw data_error("index file truncated");
    u32 version = 0;
    for (int k = 0; k < 4; ++k) version |= static_cast<u32>(static_cast<u8>(verbuf[k])) << (8 * k);
    if (version != kVersion) throw data_error("unsupported index version");

    char numbuf[48];
    if (!in.read(numbuf, 48)) throw data_error("index file truncated");
    auto hdr_u64 = [&](int idx) {
        u64 v = 0;
        for (int k = 0; k < 8; ++k)
            v |= static_cast<u64>(static_cast<u8>(numbuf[idx * 8 + k])) << (8 * k);
        return v;
    };
    const u64 n1 = hdr_u64(0);
    const u64 r = hdr_u64(1);
    const u64 t = hdr_u64(2);
    hdr_u64(3);  // g, recomputed from the rules
    const u64 f = hdr_u64(4);
    const u64 base = hdr_u64(5);

    WheelerMap wm;
    {
        std::string s = read_section(in);
        Reader rd(s.data(), s.size());
        u64 count = rd.u64v();
        wm.tag_dict_.reserve(count);
        for (u64 i = 0; i < count; ++i) {
            u32 len = rd.u32v();
            wm.tag_dict_.push_back(rd.bytes(len));
        }
    }
    {
        std::string s = read_section(in);
        Reader rd(s.data(), s.size());
        std::vector<u8> chars(r);
        std::vector<u64> lens(r), head(r), tail(r);
        for (u64 i = 0; i < r; ++i) {
            chars[i] = static_cast<u8>(rd.bytes(1)[0]);
            lens[i] = rd.varint();
        }
        for (u64 i = 0; i < r; ++i) head[i] = rd.u64v();
        for (u64 i = 0; i < r; ++i) tail[i] = rd.u64v();
        wm.bwt_ = RLBWT::from_runs(std::move(chars), std::move(lens), std::move(head),
                                   std::move(tail));
        if (wm.bwt_.size() != n1) throw data_error("inconsistent BWT size");
    }
    {
        std::string s = read_section(in);
        Reader rd(s.data(), s.size());
        u32 terms = rd.u32v();
        std::vector<u8> chars(terms);
        for (u32 i = 0; i < terms; ++i) chars[i] = static_cast<u8>(rd.bytes(1)[0]);
        u32 rules = rd.u32v();
        std::vector<u32> lefts(rules), rights(rules);
        for (u32 i = 0; i < rules; ++i) {
            lefts[i] = rd.u32v();
            rights[i] = rd.u32v();
        }
        u32 root = rd.u32v();
        wm.slp_ = Slp::from_rules(std::move(chars), std::move(lefts), std::move(rights), root,
                                  n1, base);
    }
    {
        std::string s = read_section(in);
        Reader rd(s.data(), s.size());
        std::vector<u32> tags(t);
        std::vector<u64> lens(t), head(t), tail(t), larr(2 * t + 1);
        for (u64 i = 0; i < t; ++i) tags[i] = rd.u32v();
        for (u64 i = 0; i < t; ++i) lens[i] = rd.varint();
        for (u64 i = 0; i < t; ++i) head[i] = rd.u64v();
        for (u64 i = 0; i < t; ++i) tail[i] = rd.u64v();
        for (u64 i = 0; i < larr.size(); ++i) larr[i] = rd.u64v();
        wm.runs_ = TagRunIndex::from_arrays(std::move(tags), std::move(lens), std::move(head),
                                            std::move(tail), std::move(larr));
    }
    {
        std::string s = read_section(in);
        Reader rd(s.data(), s.size());
        std::vector<u64> lens(2 * t);
        for (u64 i = 0; i < lens.size(); ++i) lens[i] = rd.u64v();
        wm.triple_ = TripleIndex::from_lens(f, std::move(lens), wm.runs_);
    }
    wm.hierarchy_ = IntervalHierarchy::build(wm.runs_);
    wm.tag_tree_ = TagTree::build(wm.runs_, wm.hierarchy_);
    return wm;
}

void IndexCodec::save_file(const WheelerMap& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write " + path);
    save(index, out);
    if (!out) throw data_error("write failed for " + path);
}

WheelerMap IndexCodec::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot read " + path);
    return load(in);
}

} // namespace wmap
