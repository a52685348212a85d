void load(File f) {
  try {
    parse(f);
  } catch (IOException e) {
    fail(e);
  }
}
