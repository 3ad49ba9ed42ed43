#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace patbitext::xml {

// Element names are matched by local name. A prefix ("exch:") is stripped when
// `accept_any_prefix` is set or the prefix is listed; otherwise the qualified
// name is kept and no schema rule will match it.
struct NamespaceMap {
  bool accept_any_prefix = true;
  std::vector<std::string> prefixes;

  std::string local_name(std::string_view qname) const;
};

struct Element {
  struct Content {
    std::string text;            // used when element < 0
    long element = -1;           // index into `elements`
  };

  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> elements;
  std::vector<Content> content;  // document order of text and child elements

  const std::string* attr(std::string_view key) const;
  const Element* child(std::string_view local) const;
  std::vector<const Element*> children(std::string_view local) const;
  // First descendant (depth-first, document order) with this name.
  const Element* find(std::string_view local) const;
  // Outermost descendants with this name, in document order.
  std::vector<const Element*> find_all(std::string_view local) const;
  // Concatenated descendant text.
  std::string text() const;
};

// Splits `bytes` into records whose root element has local name `root`.
// Accepts a single document, several concatenated documents (each with its own
// XML declaration / DOCTYPE), or records nested inside a wrapper element.
// Input must be UTF-8. Throws MalformedRecord on syntax errors.
std::vector<Element> read_records(std::string_view bytes, std::string_view root,
                                  const NamespaceMap& ns = {});

// Escapes &, <, > and " for text and attribute values.
std::string escape(std::string_view s);

}  // namespace patbitext::xml
