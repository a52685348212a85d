int total = 0;
int count = 0;
for (String line : lines) {
  total += line.length();
}
