#include "dqc/qasm.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace dqc {

namespace {

struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no, what); }

    void skip_spaces() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool try_literal(std::string_view lit) {
        skip_spaces();
        if (text.substr(pos, lit.size()) != lit) return false;
        pos += lit.size();
        return true;
    }

    void expect_literal(std::string_view lit) {
        if (!try_literal(lit)) fail("expected '" + std::string(lit) + "'");
    }

    // An identifier-like word: [a-z_][a-z0-9_]*.
    std::string word() {
        skip_spaces();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        if (pos == start) fail("expected identifier");
        return std::string(text.substr(start, pos - start));
    }

    std::uint32_t number() {
        skip_spaces();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected number");
        unsigned long v = 0;
        try {
            v = std::stoul(std::string(text.substr(start, pos - start)));
        } catch (const std::out_of_range&) {
            fail("index out of range");
        }
        return static_cast<std::uint32_t>(v);
    }

    // reg[index] with a fixed register name.
    std::uint32_t indexed(std::string_view reg) {
        expect_literal(reg);
        expect_literal("[");
        std::uint32_t idx = number();
        expect_literal("]");
        return idx;
    }

    void expect_end() {
        expect_literal(";");
        skip_spaces();
        if (pos != text.size()) fail("trailing input after ';'");
    }
};

struct Statement {
    enum class Kind { Qreg, Creg, Gate } kind;
    std::uint32_t size = 0;
    Gate gate = Gate::h(0);
};

std::optional<Statement> parse_line(std::string_view raw, std::size_t line_no) {
    if (std::size_t cut = raw.find("//"); cut != std::string_view::npos) raw = raw.substr(0, cut);

    LineScanner s{raw, 0, line_no};
    s.skip_spaces();
    if (s.pos == raw.size()) return std::nullopt;

    if (s.try_literal("OPENQASM")) {
        s.expect_literal("2.0");
        s.expect_end();
        return std::nullopt;
    }
    if (s.try_literal("include")) return std::nullopt;

    std::string head = s.word();
    Statement st{};
    if (head == "qreg" || head == "creg") {
        st.kind = head == "qreg" ? Statement::Kind::Qreg : Statement::Kind::Creg;
        st.size = s.indexed(head == "qreg" ? "q" : "c");
        s.expect_end();
        return st;
    }

    st.kind = Statement::Kind::Gate;
    if (head == "h" || head == "x" || head == "z" || head == "reset") {
        std::uint32_t q = s.indexed("q");
        st.gate = head == "h"   ? Gate::h(q)
                  : head == "x" ? Gate::x(q)
                  : head == "z" ? Gate::z(q)
                                : Gate::reset(q);
    } else if (head == "cx" || head == "swap") {
        std::uint32_t a = s.indexed("q");
        s.expect_literal(",");
        std::uint32_t b = s.indexed("q");
        st.gate = head == "cx" ? Gate::cnot(a, b) : Gate::swap(a, b);
    } else if (head == "measure") {
        std::uint32_t q = s.indexed("q");
        s.expect_literal("->");
        std::uint32_t c = s.indexed("c");
        st.gate = Gate::measure(q, c);
    } else if (head == "if") {
        s.expect_literal("(");
        std::uint32_t c = s.indexed("c");
        s.expect_literal("==");
        if (s.number() != 1) s.fail("only '==1' conditions are supported");
        s.expect_literal(")");
        std::string body = s.word();
        if (body != "x" && body != "z") s.fail("if-gate body must be x or z");
        std::uint32_t q = s.indexed("q");
        st.gate = body == "x" ? Gate::if_x(c, q) : Gate::if_z(c, q);
    } else {
        s.fail("unknown statement '" + head + "'");
    }
    s.expect_end();
    return st;
}

}  // namespace

Circuit parse_qasm(const std::string& text) {
    std::optional<std::uint32_t> n_qubits;
    std::uint32_t n_clbits = 0;
    std::vector<std::pair<std::size_t, Gate>> pending;

    std::istringstream in(text);
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        std::optional<Statement> st = parse_line(line, line_no);
        if (!st) continue;
        switch (st->kind) {
            case Statement::Kind::Qreg:
                if (n_qubits) throw ParseError(line_no, "duplicate qreg declaration");
                n_qubits = st->size;
                break;
            case Statement::Kind::Creg:
                n_clbits = st->size;
                break;
            case Statement::Kind::Gate:
                pending.emplace_back(line_no, st->gate);
                break;
        }
    }
    if (!n_qubits) {
        // blame the first statement that needed the register
        throw ParseError(pending.empty() ? 1 : pending.front().first,
                         "missing qreg declaration");
    }

    Circuit circuit(*n_qubits, n_clbits);
    for (const auto& [line_no, gate] : pending) {
        try {
            circuit.append(gate);
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return circuit;
}

Circuit parse_qasm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qasm(buf.str());
}

std::string emit_qasm(const Circuit& circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "qreg q[" << circuit.n_qubits() << "];\n";
    if (circuit.n_clbits() > 0) out << "creg c[" << circuit.n_clbits() << "];\n";
    for (const Gate& g : circuit.gates()) {
        if (g.kind == GateKind::U1q) {
            throw ValidationError("u1q gates have no text form");
        }
        out << g.to_string() << ";\n";
    }
    return out.str();
}

void write_qasm_file(const Circuit& circuit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    out << emit_qasm(circuit);
}

}  // namespace dqc
