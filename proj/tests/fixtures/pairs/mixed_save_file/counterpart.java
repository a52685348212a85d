public void save(File file) throws IOException {
  FileWriter w = new FileWriter(file);
  w.write(content);
  w.close();
}
