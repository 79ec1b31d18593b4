#pragma once

// Machine-provenance block attached to persisted runs and report headers.
// Kept in a sidecar file / report header rather than inside the data CSVs,
// which must stay byte-identical across reruns.

#include <ctime>
#include <fstream>
#include <sstream>
#include <string>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/utsname.h>
#endif

namespace newsort {

struct MachineProvenance {
  std::string os;
  std::string cpu;
  std::string timestamp_utc;
};

inline MachineProvenance collect_provenance() {
  MachineProvenance p;
#if defined(__unix__) || defined(__APPLE__)
  utsname uts{};
  if (uname(&uts) == 0) {
    p.os = std::string(uts.sysname) + " " + uts.release + " " + uts.machine;
  }
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto name = line.substr(colon + 1);
        while (!name.empty() && name.front() == ' ') name.erase(name.begin());
        p.cpu = name;
      }
      break;
    }
  }
#endif
  if (p.os.empty()) p.os = "unknown";
  if (p.cpu.empty()) p.cpu = "unknown";
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  p.timestamp_utc = buf;
  return p;
}

/// Text block for report headers and run sidecar files. Includes the write
/// accounting conventions so counter columns stay comparable across
/// implementations.
inline std::string render_provenance(const MachineProvenance& p) {
  std::ostringstream out;
  out << "os: " << p.os << '\n'
      << "cpu: " << p.cpu << '\n'
      << "timestamp: " << p.timestamp_utc << '\n'
      << "writes convention: new_sort counts 2 writes per element per partition call"
         " (scratch fill + copy-back, pivot included);"
         " quicksort_baseline counts 3 element moves per executed swap, self-swaps skipped\n"
      << "timed region: the sort call only, variate generation excluded\n";
  return out.str();
}

}  // namespace newsort
