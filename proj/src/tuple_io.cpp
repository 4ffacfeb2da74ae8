#include "simdiag/tuple_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace simdiag {

namespace {

// Splits "re+imi" at the sign of the imaginary part: the last '+'/'-' that is
// neither the leading sign nor part of an exponent.
size_t imaginary_split(const std::string& body) {
  for (size_t pos = body.size(); pos-- > 1;) {
    const char c = body[pos];
    if (c != '+' && c != '-') continue;
    const char prev = body[pos - 1];
    if (prev == 'e' || prev == 'E') continue;
    return pos;
  }
  return std::string::npos;
}

double parse_double(const std::string& text, const std::string& token) {
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw IoError("bad numeric token '" + token + "'");
  }
  if (consumed != text.size()) throw IoError("bad numeric token '" + token + "'");
  return value;
}

std::string format_double(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

}  // namespace

Complex parse_complex(const std::string& token) {
  if (token.empty()) throw IoError("empty numeric token");
  if (token.back() != 'i') {
    return Complex(parse_double(token, token), 0.0);
  }
  const std::string body = token.substr(0, token.size() - 1);
  if (body.empty()) throw IoError("bad numeric token '" + token + "'");
  const size_t split = imaginary_split(body);
  if (split == std::string::npos) {
    throw IoError("complex token '" + token + "' needs an explicit real part");
  }
  const double re = parse_double(body.substr(0, split), token);
  std::string imag_text = body.substr(split);
  if (imag_text == "+" || imag_text == "-") imag_text += "1";
  const double im = parse_double(imag_text, token);
  return Complex(re, im);
}

std::string format_complex(const Complex& value) {
  if (value.imag() == 0.0) return format_double(value.real());
  std::string out = format_double(value.real());
  if (!std::signbit(value.imag())) out += "+";
  out += format_double(value.imag());
  out += "i";
  return out;
}

MatrixTuple read_tuple(std::istream& in) {
  // Tokenize the whole stream, dropping comments.
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) tokens.push_back(token);
  }
  if (tokens.size() < 2) throw IoError("missing 'n K' header");

  int n = 0;
  int count = 0;
  try {
    n = std::stoi(tokens[0]);
    count = std::stoi(tokens[1]);
  } catch (const std::exception&) {
    throw IoError("bad 'n K' header");
  }
  if (n < 1 || count < 1) throw IoError("header dimensions must be positive");
  const size_t expected = 2 + static_cast<size_t>(count) * n * n;
  if (tokens.size() != expected) {
    throw IoError("expected " + std::to_string(expected - 2) + " entries, found " +
                  std::to_string(tokens.size() - 2));
  }

  std::vector<Matrix> entries;
  entries.reserve(static_cast<size_t>(count));
  size_t pos = 2;
  for (int k = 0; k < count; ++k) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m(i, j) = parse_complex(tokens[pos++]);
      }
    }
    entries.push_back(std::move(m));
  }
  try {
    return MatrixTuple(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

MatrixTuple read_tuple_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_tuple(in);
}

void write_tuple(std::ostream& out, const MatrixTuple& tuple) {
  out << tuple.n() << ' ' << tuple.size() << "\n";
  for (int k = 0; k < tuple.size(); ++k) {
    for (int i = 0; i < tuple.n(); ++i) {
      for (int j = 0; j < tuple.n(); ++j) {
        if (j > 0) out << ' ';
        out << format_complex(tuple[k](i, j));
      }
      out << "\n";
    }
  }
}

void write_tuple_file(const std::string& path, const MatrixTuple& tuple) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_tuple(out, tuple);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace simdiag
