void load(String path) throws IOException {
  parse(path);
}
