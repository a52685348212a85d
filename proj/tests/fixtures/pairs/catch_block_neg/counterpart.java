try {
  save(doc, true);
} catch (IOException e) {
  e.printStackTrace();
}
