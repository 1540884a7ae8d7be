#include "maxplus/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

struct Token {
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::string cur;
    int tline = 0, tcol = 0;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back({cur, tline, tcol});
            cur.clear();
        }
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '#') {
            flush();
            while (i < text.size() && text[i] != '\n') ++i;
            ++line;
            col = 1;
            continue;
        }
        if (ch == '\n') {
            flush();
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
            ++col;
            continue;
        }
        if (cur.empty()) {
            tline = line;
            tcol = col;
        }
        cur.push_back(ch);
        ++col;
    }
    flush();
    return out;
}

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    std::ostringstream os;
    os << "parse error at line " << t.line << ", column " << t.col << ": " << msg << " ('"
       << t.text << "')";
    throw ParseError(os.str(), t.line, t.col);
}

Scalar parse_scalar_at(const Token& t) {
    const std::string& s = t.text;
    if (s == "*" || s == "-inf") return Scalar::bottom();
    size_t slash = s.find('/');
    size_t dot = s.find('.');
    try {
        if (slash != std::string::npos) {
            mpq_class q(s);
            if (q.get_den() == 0) fail(t, "zero denominator");
            q.canonicalize();
            return Scalar(q);
        }
        if (dot != std::string::npos) {
            // Exact decimal: sign, integer part, fraction digits.
            std::string digits = s;
            bool neg = false;
            if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
                neg = digits[0] == '-';
                digits.erase(digits.begin());
            }
            size_t d = digits.find('.');
            std::string ip = digits.substr(0, d), fp = digits.substr(d + 1);
            if (ip.empty() && fp.empty()) fail(t, "not a number");
            for (char c : ip + fp)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    fail(t, "malformed decimal");
            mpz_class num(ip.empty() ? "0" : ip);
            mpz_class den(1);
            for (size_t k = 0; k < fp.size(); ++k) den *= 10;
            num *= den;
            if (!fp.empty()) num += mpz_class(fp);
            mpq_class q(num, den);
            q.canonicalize();
            return Scalar(neg ? mpq_class(-q) : q);
        }
        mpz_class z(s);
        return Scalar(mpq_class(z));
    } catch (const std::invalid_argument&) {
        fail(t, "not a number");
    }
}

}  // namespace

Scalar parse_scalar_token(const std::string& token) {
    return parse_scalar_at({token, 0, 0});
}

std::string scalar_token(const Scalar& s) {
    if (s.is_bottom()) return "*";
    return s.rat().get_str();
}

namespace {

InstanceFile parse_tokens(const std::vector<Token>& toks) {
    if (toks.empty()) throw ParseError("empty instance", 1, 1);
    size_t pos = 0;
    long n = 0;
    try {
        size_t used = 0;
        n = std::stol(toks[0].text, &used);
        if (used != toks[0].text.size()) fail(toks[0], "dimension must be an integer");
    } catch (const std::exception&) {
        fail(toks[0], "dimension must be an integer");
    }
    if (n <= 0) fail(toks[0], "dimension must be positive");
    ++pos;
    Matrix a(static_cast<int>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            if (pos >= toks.size())
                throw ParseError("matrix ends early: expected " + std::to_string(n * n) +
                                     " entries",
                                 toks.back().line, toks.back().col);
            a.at(static_cast<int>(i), static_cast<int>(j)) = parse_scalar_at(toks[pos]);
            ++pos;
        }
    InstanceFile inst{std::move(a), std::nullopt};
    if (pos < toks.size()) {
        if (toks[pos].text != "v:") fail(toks[pos], "expected 'v:' or end of file");
        ++pos;
        Vector v(static_cast<int>(n));
        for (long i = 0; i < n; ++i) {
            if (pos >= toks.size())
                throw ParseError("vector ends early", toks.back().line, toks.back().col);
            v.at(static_cast<int>(i)) = parse_scalar_at(toks[pos]);
            ++pos;
        }
        inst.v = std::move(v);
    }
    if (pos < toks.size()) fail(toks[pos], "trailing input");
    return inst;
}

}  // namespace

InstanceFile parse_instance(const std::string& text) { return parse_tokens(tokenize(text)); }

Matrix parse_matrix(const std::string& text) {
    InstanceFile inst = parse_instance(text);
    if (inst.v) throw ParseError("unexpected vector block", 1, 1);
    return inst.a;
}

std::string serialize_matrix(const Matrix& a) {
    std::ostringstream os;
    os << a.dim() << '\n';
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            if (j) os << ' ';
            os << scalar_token(a.at(i, j));
        }
        os << '\n';
    }
    return os.str();
}

std::string serialize_instance(const InstanceFile& inst) {
    std::string out = serialize_matrix(inst.a);
    if (inst.v) {
        out += "v:";
        for (int i = 0; i < inst.v->dim(); ++i) {
            out += ' ';
            out += scalar_token(inst.v->at(i));
        }
        out += '\n';
    }
    return out;
}

InstanceFile read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_instance(os.str());
}

}  // namespace maxplus
