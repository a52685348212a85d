public String load(String path) throws IOException {
  return new String(Files.readAllBytes(Paths.get(path)));
}
