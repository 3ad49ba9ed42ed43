#include "patbitext/xml.hpp"

#include <expat.h>

#include <algorithm>
#include <memory>

#include "patbitext/error.hpp"

namespace patbitext::xml {

std::string NamespaceMap::local_name(std::string_view qname) const {
  const auto colon = qname.find(':');
  if (colon == std::string_view::npos) return std::string(qname);
  const auto prefix = qname.substr(0, colon);
  if (accept_any_prefix ||
      std::find(prefixes.begin(), prefixes.end(), prefix) != prefixes.end()) {
    return std::string(qname.substr(colon + 1));
  }
  return std::string(qname);
}

const std::string* Element::attr(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Element* Element::child(std::string_view local) const {
  for (const auto& e : elements) {
    if (e.name == local) return &e;
  }
  return nullptr;
}

std::vector<const Element*> Element::children(std::string_view local) const {
  std::vector<const Element*> out;
  for (const auto& e : elements) {
    if (e.name == local) out.push_back(&e);
  }
  return out;
}

const Element* Element::find(std::string_view local) const {
  for (const auto& e : elements) {
    if (e.name == local) return &e;
    if (const auto* hit = e.find(local)) return hit;
  }
  return nullptr;
}

namespace {
void collect(const Element& e, std::string_view local, std::vector<const Element*>& out) {
  for (const auto& c : e.elements) {
    if (c.name == local) {
      out.push_back(&c);
    } else {
      collect(c, local, out);
    }
  }
}

void append_text(const Element& e, std::string& out) {
  for (const auto& c : e.content) {
    if (c.element < 0) {
      out += c.text;
    } else {
      append_text(e.elements[static_cast<std::size_t>(c.element)], out);
    }
  }
}
}  // namespace

std::vector<const Element*> Element::find_all(std::string_view local) const {
  std::vector<const Element*> out;
  collect(*this, local, out);
  return out;
}

std::string Element::text() const {
  std::string out;
  append_text(*this, out);
  return out;
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

constexpr std::string_view kWrapper = "patbitext-records";

bool starts_at(std::string_view s, std::size_t pos, std::string_view what) {
  return s.substr(pos, what.size()) == what;
}

// Drops XML declarations, DOCTYPE declarations and a leading BOM so that
// concatenated documents can live under one synthetic root. Comments and
// CDATA sections are copied verbatim.
std::string strip_prologs(std::string_view in) {
  std::string out;
  out.reserve(in.size() + 128);
  std::size_t i = 0;
  if (starts_at(in, 0, "\xEF\xBB\xBF")) i = 3;
  while (i < in.size()) {
    if (in[i] != '<') {
      const auto next = in.find('<', i);
      const auto end = next == std::string_view::npos ? in.size() : next;
      out.append(in.substr(i, end - i));
      i = end;
      continue;
    }
    if (starts_at(in, i, "<!--")) {
      auto end = in.find("-->", i + 4);
      end = end == std::string_view::npos ? in.size() : end + 3;
      out.append(in.substr(i, end - i));
      i = end;
    } else if (starts_at(in, i, "<![CDATA[")) {
      auto end = in.find("]]>", i + 9);
      end = end == std::string_view::npos ? in.size() : end + 3;
      out.append(in.substr(i, end - i));
      i = end;
    } else if (starts_at(in, i, "<?xml") && i + 5 < in.size() &&
               (in[i + 5] == ' ' || in[i + 5] == '?' || in[i + 5] == '\t' ||
                in[i + 5] == '\n' || in[i + 5] == '\r')) {
      auto end = in.find("?>", i + 5);
      i = end == std::string_view::npos ? in.size() : end + 2;
    } else if (starts_at(in, i, "<!DOCTYPE")) {
      std::size_t j = i + 9;
      int bracket = 0;
      char quote = 0;
      for (; j < in.size(); ++j) {
        const char c = in[j];
        if (quote != 0) {
          if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
          quote = c;
        } else if (c == '[') {
          ++bracket;
        } else if (c == ']') {
          --bracket;
        } else if (c == '>' && bracket <= 0) {
          break;
        }
      }
      i = j < in.size() ? j + 1 : in.size();
    } else {
      out.push_back('<');
      ++i;
    }
  }
  return out;
}

struct BuildState {
  std::string_view root;
  const NamespaceMap* ns = nullptr;
  std::vector<Element> records;
  // Stack of open elements of the record under construction. The first entry
  // is the record root; pointers stay valid because children are appended
  // only to the innermost (top) element.
  std::vector<Element*> stack;
  std::unique_ptr<Element> current;
};

void XMLCALL on_start(void* user, const XML_Char* qname, const XML_Char** atts) {
  auto& st = *static_cast<BuildState*>(user);
  auto local = st.ns->local_name(qname);
  if (st.stack.empty()) {
    if (local != st.root) return;
    st.current = std::make_unique<Element>();
    st.current->name = std::move(local);
    st.stack.push_back(st.current.get());
  } else {
    Element* parent = st.stack.back();
    parent->content.push_back({{}, static_cast<long>(parent->elements.size())});
    parent->elements.emplace_back();
    Element& e = parent->elements.back();
    e.name = std::move(local);
    st.stack.push_back(&e);
  }
  Element& e = *st.stack.back();
  for (std::size_t i = 0; atts[i] != nullptr; i += 2) {
    e.attributes.emplace_back(st.ns->local_name(atts[i]), atts[i + 1]);
  }
}

void XMLCALL on_end(void* user, const XML_Char*) {
  auto& st = *static_cast<BuildState*>(user);
  if (st.stack.empty()) return;
  st.stack.pop_back();
  if (st.stack.empty()) {
    st.records.push_back(std::move(*st.current));
    st.current.reset();
  }
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
  auto& st = *static_cast<BuildState*>(user);
  if (st.stack.empty()) return;
  Element& e = *st.stack.back();
  if (!e.content.empty() && e.content.back().element < 0) {
    e.content.back().text.append(s, static_cast<std::size_t>(len));
  } else {
    e.content.push_back({std::string(s, static_cast<std::size_t>(len)), -1});
  }
}

// Entities declared in an external DTD are not resolved; their references
// are dropped.
void XMLCALL on_skipped_entity(void*, const XML_Char*, int) {}

}  // namespace

std::vector<Element> read_records(std::string_view bytes, std::string_view root,
                                  const NamespaceMap& ns) {
  std::string doc = "<!DOCTYPE ";
  doc += kWrapper;
  doc += " SYSTEM \"records.dtd\"><";
  doc += kWrapper;
  doc += '>';
  doc += strip_prologs(bytes);
  doc += "</";
  doc += kWrapper;
  doc += '>';

  BuildState st;
  st.root = root;
  st.ns = &ns;

  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw MalformedRecord("cannot allocate XML parser");
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetSkippedEntityHandler(parser.get(), on_skipped_entity);

  constexpr std::size_t kChunk = 1 << 20;
  for (std::size_t off = 0; off < doc.size() || off == 0; off += kChunk) {
    const std::size_t len = std::min(kChunk, doc.size() - off);
    const bool last = off + len >= doc.size();
    if (XML_Parse(parser.get(), doc.data() + off, static_cast<int>(len), last ? 1 : 0) ==
        XML_STATUS_ERROR) {
      throw MalformedRecord(std::string("XML error at line ") +
                            std::to_string(XML_GetCurrentLineNumber(parser.get())) + ", column " +
                            std::to_string(XML_GetCurrentColumnNumber(parser.get())) + ": " +
                            XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    if (last) break;
  }
  return std::move(st.records);
}

}  // namespace patbitext::xml
